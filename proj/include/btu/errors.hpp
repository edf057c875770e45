#pragma once

#include <stdexcept>
#include <string>

namespace btu {

/// A caller handed us an input outside an operation's domain
/// (bad partition part, non-bijective permutation, r == m complement, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An input is structurally valid but outside the configured resource
/// budget (instance too large for brute force, deadline exceeded).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace btu
