#pragma once

// Umbrella header: balanced Tanner units, their partition calculus,
// permutation representations, families, and cycle-index bounds.

#include "btu/canonical.hpp"
#include "btu/cycle_index.hpp"
#include "btu/enumerate.hpp"
#include "btu/errors.hpp"
#include "btu/graph_ops.hpp"
#include "btu/matrix.hpp"
#include "btu/numeric.hpp"
#include "btu/partition.hpp"
#include "btu/permutation.hpp"
#include "btu/phi.hpp"
