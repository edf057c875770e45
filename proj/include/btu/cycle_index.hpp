#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "btu/errors.hpp"
#include "btu/graph_ops.hpp"
#include "btu/matrix.hpp"
#include "btu/numeric.hpp"
#include "btu/partition.hpp"
#include "btu/permutation.hpp"
#include "btu/phi.hpp"

namespace btu {

/// Cycle structure of a degree-n permutation: j()[k-1] counts the
/// k-cycles, so sum of k * j_k == n.
struct CycleType {
    std::vector<int> j;

    int degree() const {
        int n = 0;
        for (std::size_t k = 0; k < j.size(); ++k) n += static_cast<int>(k + 1) * j[k];
        return n;
    }

    friend auto operator<=>(const CycleType&, const CycleType&) = default;

    static CycleType of_permutation(const Permutation& p) {
        int m = p.m();
        CycleType t;
        t.j.assign(static_cast<std::size_t>(m), 0);
        std::vector<char> seen(static_cast<std::size_t>(m), 0);
        for (int x = 1; x <= m; ++x) {
            if (seen[static_cast<std::size_t>(x - 1)]) continue;
            int len = 0, y = x;
            do {
                seen[static_cast<std::size_t>(y - 1)] = 1;
                y = p.images()[static_cast<std::size_t>(y - 1)];
                ++len;
            } while (y != x);
            ++t.j[static_cast<std::size_t>(len - 1)];
        }
        return t;
    }

    /// From an unrestricted list of cycle lengths summing to n.
    static CycleType of_cycle_lengths(int n, const std::vector<int>& lengths) {
        CycleType t;
        t.j.assign(static_cast<std::size_t>(n), 0);
        int total = 0;
        for (int len : lengths) {
            if (len < 1 || len > n) throw DomainError("cycle type: bad cycle length");
            ++t.j[static_cast<std::size_t>(len - 1)];
            total += len;
        }
        if (total != n) throw DomainError("cycle type: lengths must sum to n");
        return t;
    }

    /// "s1^5", "s5", "s1 s2^2" — factors for each k with j_k > 0.
    std::string monomial() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (!j[k]) continue;
            if (!first) os << ' ';
            first = false;
            os << 's' << (k + 1);
            if (j[k] > 1) os << '^' << j[k];
        }
        if (first) os << "1"; // degree-0 edge case
        return os.str();
    }
};

/// Number of degree-n permutations with cycle type j:
/// h(j) = n! / prod(k^j_k * j_k!).  The division is exact.
inline BigInt h_count(const CycleType& t) {
    int n = t.degree();
    BigInt denom = 1;
    for (std::size_t k = 0; k < t.j.size(); ++k) {
        for (int c = 0; c < t.j[k]; ++c) denom *= static_cast<int>(k + 1);
        denom *= factorial(t.j[k]);
    }
    BigInt num = factorial(n);
    if (num % denom != 0) throw std::logic_error("h_count: non-exact division");
    return num / denom;
}

/// The pairing weight of Redfield's cap: prod(k^i_k * i_k!).
inline BigInt cap_weight(const CycleType& t) {
    BigInt w = 1;
    for (std::size_t k = 0; k < t.j.size(); ++k) {
        for (int c = 0; c < t.j[k]; ++c) w *= static_cast<int>(k + 1);
        w *= factorial(t.j[k]);
    }
    return w;
}

/// Polynomial in s1..sn with exact rational coefficients, keyed by cycle
/// type.  A group's cycle index Z(A) = |A|^-1 * sum over the group of the
/// member's cycle-type monomial; its coefficients sum to 1.
class CycleIndexPoly {
public:
    explicit CycleIndexPoly(int degree) : degree_(degree) {
        if (degree < 0) throw DomainError("cycle index: negative degree");
    }

    int degree() const { return degree_; }
    const std::map<CycleType, Rational>& terms() const { return terms_; }

    void add_term(const CycleType& t, const Rational& coeff) {
        if (t.degree() != degree_) throw DomainError("cycle index: term degree mismatch");
        CycleType key = t;
        key.j.resize(static_cast<std::size_t>(degree_), 0); // trailing zeros never split a type
        Rational& c = terms_[key];
        c += coeff;
        if (c == 0) terms_.erase(key);
    }

    Rational coefficient_sum() const {
        Rational s = 0;
        for (const auto& [t, c] : terms_) s += c;
        return s;
    }

    friend bool operator==(const CycleIndexPoly&, const CycleIndexPoly&) = default;

    /// "1/10 s1^5 + 1/2 s1 s2^2 + 2/5 s5" — terms sorted by cycle type
    /// (descending exponent vectors: the identity monomial prints first).
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << it->second << ' ' << it->first.monomial();
        }
        return os.str();
    }

private:
    int degree_;
    std::map<CycleType, Rational> terms_;
};

/// Z(S_n): coefficient h(j)/n! on every cycle type of degree n.
inline CycleIndexPoly z_symmetric(int n) {
    if (n < 1) throw DomainError("z_symmetric: n must be >= 1");
    CycleIndexPoly z(n);
    BigInt nf = factorial(n);
    detail::for_each_partition_min(n, 1, [&](const std::vector<int>& lengths) {
        CycleType t = CycleType::of_cycle_lengths(n, lengths);
        z.add_term(t, Rational(h_count(t), nf));
    });
    return z;
}

namespace detail {
inline int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    if (n > 1) result -= result / n;
    return result;
}
} // namespace detail

/// Z(C_n) = (1/n) * sum over d|n of phi(d) * s_d^(n/d).
inline CycleIndexPoly z_cyclic(int n) {
    if (n < 1) throw DomainError("z_cyclic: n must be >= 1");
    CycleIndexPoly z(n);
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        CycleType t;
        t.j.assign(static_cast<std::size_t>(n), 0);
        t.j[static_cast<std::size_t>(d - 1)] = n / d;
        z.add_term(t, Rational(detail::euler_phi(d), n));
    }
    return z;
}

/// Z(D_n), n >= 3: rotations as in Z(C_n) plus the reflections —
/// n odd: n axes through a vertex (s1 s2^((n-1)/2));
/// n even: n/2 vertex axes (s1^2 s2^(n/2-1)) and n/2 edge axes (s2^(n/2)).
inline CycleIndexPoly z_dihedral(int n) {
    if (n < 3) throw DomainError("z_dihedral: n must be >= 3");
    CycleIndexPoly z(n);
    CycleIndexPoly rotations = z_cyclic(n);  // keep alive: terms() is a view
    for (const auto& [t, c] : rotations.terms()) z.add_term(t, c / 2);
    if (n % 2 == 1) {
        CycleType t;
        t.j.assign(static_cast<std::size_t>(n), 0);
        t.j[0] = 1;
        t.j[1] = (n - 1) / 2;
        z.add_term(t, Rational(1, 2));
    } else {
        CycleType edge;
        edge.j.assign(static_cast<std::size_t>(n), 0);
        edge.j[1] = n / 2;
        z.add_term(edge, Rational(1, 4));
        CycleType vertex;
        vertex.j.assign(static_cast<std::size_t>(n), 0);
        vertex.j[0] = 2;
        vertex.j[1] = n / 2 - 1;
        z.add_term(vertex, Rational(1, 4));
    }
    return z;
}

/// Redfield's cap: over cycle types present in every polynomial, add
/// (product of coefficients) * cap_weight(type)^(m-1), where m is the
/// number of polynomials.  Symmetric and multilinear.
inline Rational cap(const std::vector<CycleIndexPoly>& polys) {
    if (polys.size() < 2) throw DomainError("cap: needs at least two polynomials");
    for (const auto& p : polys)
        if (p.degree() != polys[0].degree()) throw DomainError("cap: degree mismatch");
    Rational total = 0;
    for (const auto& [t, c0] : polys[0].terms()) {
        Rational prod = c0;
        bool everywhere = true;
        for (std::size_t i = 1; i < polys.size(); ++i) {
            auto it = polys[i].terms().find(t);
            if (it == polys[i].terms().end()) {
                everywhere = false;
                break;
            }
            prod *= it->second;
        }
        if (!everywhere) continue;
        BigInt w = cap_weight(t);
        Rational wpow = 1;
        for (std::size_t e = 0; e + 1 < polys.size(); ++e) wpow *= Rational(w);
        total += prod * wpow;
    }
    return total;
}

/// Cap's polynomial-valued variant: each common cycle type keeps its
/// monomial.  Evaluating every s variable at 1 gives cap back.
inline CycleIndexPoly cup(const std::vector<CycleIndexPoly>& polys) {
    if (polys.size() < 2) throw DomainError("cup: needs at least two polynomials");
    for (const auto& p : polys)
        if (p.degree() != polys[0].degree()) throw DomainError("cup: degree mismatch");
    CycleIndexPoly out(polys[0].degree());
    for (const auto& [t, c0] : polys[0].terms()) {
        Rational prod = c0;
        bool everywhere = true;
        for (std::size_t i = 1; i < polys.size(); ++i) {
            auto it = polys[i].terms().find(t);
            if (it == polys[i].terms().end()) {
                everywhere = false;
                break;
            }
            prod *= it->second;
        }
        if (!everywhere) continue;
        BigInt w = cap_weight(t);
        Rational wpow = 1;
        for (std::size_t e = 0; e + 1 < polys.size(); ++e) wpow *= Rational(w);
        out.add_term(t, prod * wpow);
    }
    return out;
}

/// Cycle index of the automorphisms of psi(beta), projected onto their
/// action on column (VN) labels.  Enumerates all row/column permutation
/// pairs fixing the matrix: for each row permutation, the admissible
/// column maps are exactly the bijections matching equal columns.  Every
/// column action arises from the same number of row permutations (the
/// row-only automorphisms form its fiber), so averaging over pairs equals
/// averaging over the projected group.
inline CycleIndexPoly z_automorphism_of_psi(const Partition& beta, int max_m = 8) {
    int m = beta.m();
    if (m > max_m)
        throw ResourceError("z_automorphism_of_psi: m=" + std::to_string(m) +
                            " exceeds limit " + std::to_string(max_m));
    Btu a = psi(beta);
    std::vector<std::uint64_t> cols(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) cols[static_cast<std::size_t>(j)] = a.column(j);

    std::map<CycleType, BigInt> counts;
    BigInt pairs = 0;

    std::vector<int> sigma(static_cast<std::size_t>(m));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<std::uint64_t> permuted_cols(static_cast<std::size_t>(m));
    do {
        // column j of the row-permuted matrix: bit i = a(sigma[i], j)
        for (int j = 0; j < m; ++j) {
            std::uint64_t c = 0;
            for (int i = 0; i < m; ++i)
                c |= static_cast<std::uint64_t>((a.row(sigma[static_cast<std::size_t>(i)]) >> j) & 1u) << i;
            permuted_cols[static_cast<std::size_t>(j)] = c;
        }
        // tau must send each original column to an equal permuted column;
        // enumerate all content-preserving bijections
        std::map<std::uint64_t, std::vector<int>> sources;
        for (int j = 0; j < m; ++j) sources[permuted_cols[static_cast<std::size_t>(j)]].push_back(j);
        std::map<std::uint64_t, std::vector<int>> targets;
        for (int j = 0; j < m; ++j) targets[cols[static_cast<std::size_t>(j)]].push_back(j);
        bool feasible = sources.size() == targets.size();
        if (feasible)
            for (const auto& [word, tgt] : targets) {
                auto it = sources.find(word);
                if (it == sources.end() || it->second.size() != tgt.size()) {
                    feasible = false;
                    break;
                }
            }
        if (!feasible) continue;
        std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
        for (auto& [word, tgt] : targets) groups.emplace_back(tgt, sources[word]);
        std::vector<int> tau(static_cast<std::size_t>(m));
        std::function<void(std::size_t)> assign = [&](std::size_t gi) {
            if (gi == groups.size()) {
                std::vector<int> images(static_cast<std::size_t>(m));
                for (int j = 0; j < m; ++j) images[static_cast<std::size_t>(j)] = tau[static_cast<std::size_t>(j)] + 1;
                counts[CycleType::of_permutation(Permutation(std::move(images)))] += 1;
                pairs += 1;
                return;
            }
            auto& [tgt, src] = groups[gi];
            std::vector<int> order = src;
            std::sort(order.begin(), order.end());
            do {
                for (std::size_t k = 0; k < tgt.size(); ++k)
                    tau[static_cast<std::size_t>(tgt[k])] = order[k];
                assign(gi + 1);
            } while (std::next_permutation(order.begin(), order.end()));
        };
        assign(0);
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    CycleIndexPoly z(m);
    for (const auto& [t, c] : counts) z.add_term(t, Rational(c, pairs));
    return z;
}

/// Superposition upper bound on the family's non-isomorphic count:
/// cap of the automorphism cycle indices of psi(beta_i).  For r=2 the
/// count is exactly one class per partition, so the bound is exactly 1.
inline Rational upper_bound_phi(const PhiSpec& spec) {
    if (spec.r() == 2) return 1;
    std::vector<CycleIndexPoly> zs;
    zs.reserve(spec.betas.size());
    for (const auto& b : spec.betas) zs.push_back(z_automorphism_of_psi(b));
    return cap(zs);
}

} // namespace btu
