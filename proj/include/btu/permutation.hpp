#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "btu/errors.hpp"
#include "btu/matrix.hpp"
#include "btu/numeric.hpp"
#include "btu/partition.hpp"

namespace btu {

/// A permutation of 1..m in one-line notation: images()[j] is the label at
/// position j+1.  Validated as a bijection on construction.
class Permutation {
public:
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        int m = static_cast<int>(images_.size());
        if (m < 1) throw DomainError("permutation: empty");
        std::vector<char> seen(static_cast<std::size_t>(m), 0);
        for (int v : images_) {
            if (v < 1 || v > m || seen[static_cast<std::size_t>(v - 1)])
                throw DomainError("permutation: not a bijection on 1..m");
            seen[static_cast<std::size_t>(v - 1)] = 1;
        }
    }

    static Permutation identity(int m) {
        if (m < 1) throw DomainError("permutation: m must be >= 1");
        std::vector<int> v(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = i + 1;
        return Permutation(std::move(v));
    }

    int m() const { return static_cast<int>(images_.size()); }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (int j = 0; j < m(); ++j) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(j)] - 1)] = j + 1;
        return Permutation(std::move(inv));
    }

    friend auto operator<=>(const Permutation&, const Permutation&) = default;

    /// "2 3 1"
    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t j = 0; j < images_.size(); ++j) os << (j ? " " : "") << images_[j];
        return os.str();
    }

    static Permutation parse(std::string_view text) {
        std::istringstream is{std::string(text)};
        std::vector<int> v;
        int x;
        while (is >> x) v.push_back(x);
        if (!is.eof()) throw DomainError("permutation: non-numeric token in image list");
        return Permutation(std::move(v));
    }

private:
    std::vector<int> images_;
};

/// Compatible <=> the image lists differ at every position.
inline bool is_compatible(const Permutation& a, const Permutation& b) {
    if (a.m() != b.m()) throw DomainError("is_compatible: size mismatch");
    for (int j = 0; j < a.m(); ++j)
        if (a.images()[static_cast<std::size_t>(j)] == b.images()[static_cast<std::size_t>(j)]) return false;
    return true;
}

/// An ordered list of r pairwise-compatible permutations of 1..m; the
/// permutation form of an (m,r) unit.  perms()[0] is p1 (conventionally
/// the identity when the rep was built rather than decomposed).
class PermutationRep {
public:
    explicit PermutationRep(std::vector<Permutation> perms) : perms_(std::move(perms)) {
        if (perms_.empty()) throw DomainError("rep: needs at least one permutation");
        for (const auto& p : perms_)
            if (p.m() != perms_[0].m()) throw DomainError("rep: mixed sizes");
        for (std::size_t i = 0; i < perms_.size(); ++i)
            for (std::size_t j = i + 1; j < perms_.size(); ++j)
                if (!is_compatible(perms_[i], perms_[j]))
                    throw DomainError("rep: permutations must be pairwise compatible");
    }

    int m() const { return perms_[0].m(); }
    int r() const { return static_cast<int>(perms_.size()); }
    const std::vector<Permutation>& perms() const { return perms_; }

    friend auto operator<=>(const PermutationRep&, const PermutationRep&) = default;

    /// "m r" header, then r lines of one-line images.
    std::string to_text() const {
        std::ostringstream os;
        os << m() << ' ' << r() << '\n';
        for (const auto& p : perms_) os << p.to_string() << '\n';
        return os.str();
    }

    static PermutationRep from_stream(std::istream& is) {
        int m = 0, r = 0;
        if (!(is >> m >> r) || m < 1 || r < 1) throw DomainError("rep: expected \"m r\" header");
        std::vector<Permutation> perms;
        for (int i = 0; i < r; ++i) {
            std::vector<int> v(static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j)
                if (!(is >> v[static_cast<std::size_t>(j)])) throw DomainError("rep: truncated image list");
            perms.emplace_back(std::move(v));
        }
        return PermutationRep(std::move(perms));
    }

    static PermutationRep from_text(const std::string& text) {
        std::istringstream is(text);
        return from_stream(is);
    }

private:
    std::vector<Permutation> perms_;
};

/// Overlay the r permutation matrices: entry (p.images()[j]-1, j) is set
/// for each permutation p and position j.  Pairwise compatibility is
/// exactly what makes the overlay collision-free and r-regular.
inline Btu to_btu(const PermutationRep& rep) {
    int m = rep.m();
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
    for (const auto& p : rep.perms())
        for (int j = 0; j < m; ++j) {
            int i = p.images()[static_cast<std::size_t>(j)] - 1;
            std::uint64_t bit = std::uint64_t{1} << j;
            if (rows[static_cast<std::size_t>(i)] & bit)
                throw DomainError("to_btu: permutations collide (not pairwise compatible)");
            rows[static_cast<std::size_t>(i)] |= bit;
        }
    return Btu::from_rows(m, std::move(rows));
}

/// Split an (m,r) unit into r disjoint permutation matrices by repeatedly
/// extracting a perfect matching (augmenting-path search; a perfect
/// matching always exists in a regular bipartite graph, so failure is an
/// internal bug, not an input error).  to_btu() of the result restores
/// the input bit-for-bit.
inline PermutationRep decompose(const Btu& g) {
    int m = g.m();
    std::vector<std::uint64_t> left(static_cast<std::size_t>(m)); // remaining edges, row -> column mask
    for (int i = 0; i < m; ++i) left[static_cast<std::size_t>(i)] = g.row(i);
    std::vector<Permutation> perms;
    for (int round = 0; round < g.r(); ++round) {
        std::vector<int> col_to_row(static_cast<std::size_t>(m), -1);
        std::vector<int> row_to_col(static_cast<std::size_t>(m), -1);
        std::function<bool(int, std::vector<char>&)> augment = [&](int i, std::vector<char>& vis) {
            std::uint64_t cols = left[static_cast<std::size_t>(i)];
            while (cols) {
                int j = std::countr_zero(cols);
                cols &= cols - 1;
                if (vis[static_cast<std::size_t>(j)]) continue;
                vis[static_cast<std::size_t>(j)] = 1;
                if (col_to_row[static_cast<std::size_t>(j)] < 0 ||
                    augment(col_to_row[static_cast<std::size_t>(j)], vis)) {
                    col_to_row[static_cast<std::size_t>(j)] = i;
                    row_to_col[static_cast<std::size_t>(i)] = j;
                    return true;
                }
            }
            return false;
        };
        for (int i = 0; i < m; ++i) {
            std::vector<char> vis(static_cast<std::size_t>(m), 0);
            if (!augment(i, vis))
                throw std::logic_error("decompose: no perfect matching in regular remainder");
        }
        std::vector<int> images(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) images[static_cast<std::size_t>(j)] = col_to_row[static_cast<std::size_t>(j)] + 1;
        for (int i = 0; i < m; ++i)
            left[static_cast<std::size_t>(i)] &= ~(std::uint64_t{1} << row_to_col[static_cast<std::size_t>(i)]);
        perms.emplace_back(std::move(images));
    }
    return PermutationRep(std::move(perms));
}

/// The partition a compatible pair induces: the cycle type of b∘a⁻¹.
/// Compatibility forbids fixed points, so every part is >= 2.
inline Partition beta_of(const Permutation& a, const Permutation& b) {
    if (!is_compatible(a, b)) throw DomainError("beta_of: pair must be compatible");
    int m = a.m();
    Permutation ainv = a.inverse();
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    std::vector<int> parts;
    for (int x = 1; x <= m; ++x) {
        if (seen[static_cast<std::size_t>(x - 1)]) continue;
        int len = 0, y = x;
        do {
            seen[static_cast<std::size_t>(y - 1)] = 1;
            y = b.images()[static_cast<std::size_t>(ainv.images()[static_cast<std::size_t>(y - 1)] - 1)];
            ++len;
        } while (y != x);
        parts.push_back(len);
    }
    return Partition(std::move(parts));
}

/// Same value computed the long way round: overlay the two permutation
/// matrices into a 2-regular bipartite graph and measure its connected
/// components (each is a cycle on 2q nodes, contributing a part q).
/// Cross-validates beta_of; tests compare the two exhaustively.
inline Partition beta_of_traversal(const Permutation& a, const Permutation& b) {
    if (!is_compatible(a, b)) throw DomainError("beta_of: pair must be compatible");
    int m = a.m();
    Permutation binv = b.inverse();
    // vertex v: CN label x -> x-1, VN position j -> m+j-1
    std::vector<char> seen(static_cast<std::size_t>(2 * m), 0);
    std::vector<int> parts;
    for (int j = 1; j <= m; ++j) {
        if (seen[static_cast<std::size_t>(m + j - 1)]) continue;
        // walk: position -> its a-label -> the position where b has that label -> ...
        int cn_count = 0, pos = j;
        while (!seen[static_cast<std::size_t>(m + pos - 1)]) {
            seen[static_cast<std::size_t>(m + pos - 1)] = 1;
            int label = a.images()[static_cast<std::size_t>(pos - 1)];
            seen[static_cast<std::size_t>(label - 1)] = 1;
            ++cn_count;
            pos = binv.images()[static_cast<std::size_t>(label - 1)];
        }
        parts.push_back(cn_count);
    }
    return Partition(std::move(parts));
}

/// Stream, in lexicographic order, every permutation of 1..m compatible
/// with all of `existing` (which must itself be pairwise compatible; an
/// empty list streams all of S_m).  `visit` returns false to stop early.
/// This is a depth-first walk of the permutation prefix tree with the
/// labels of `existing` forbidden depth by depth.
inline void for_each_compatible(int m, const std::vector<Permutation>& existing,
                                const std::function<bool(const Permutation&)>& visit) {
    if (m < 1 || m > 63) throw DomainError("for_each_compatible: m must be in 1..63");
    for (const auto& p : existing)
        if (p.m() != m) throw DomainError("for_each_compatible: size mismatch");
    for (std::size_t i = 0; i < existing.size(); ++i)
        for (std::size_t j = i + 1; j < existing.size(); ++j)
            if (!is_compatible(existing[i], existing[j]))
                throw DomainError("for_each_compatible: existing permutations must be pairwise compatible");
    std::vector<std::uint64_t> forbidden(static_cast<std::size_t>(m), 0);
    for (const auto& p : existing)
        for (int j = 0; j < m; ++j)
            forbidden[static_cast<std::size_t>(j)] |= std::uint64_t{1} << (p.images()[static_cast<std::size_t>(j)] - 1);
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    std::vector<int> images(static_cast<std::size_t>(m));
    bool stop = false;
    std::function<void(int, std::uint64_t)> rec = [&](int depth, std::uint64_t used) {
        if (stop) return;
        if (depth == m) {
            if (!visit(Permutation(images))) stop = true;
            return;
        }
        std::uint64_t avail = full & ~used & ~forbidden[static_cast<std::size_t>(depth)];
        while (avail && !stop) {
            int label = std::countr_zero(avail);
            avail &= avail - 1;
            images[static_cast<std::size_t>(depth)] = label + 1;
            rec(depth + 1, used | (std::uint64_t{1} << label));
        }
    };
    rec(0, 0);
}

/// Materialized for_each_compatible, guarded: the result can be factorial
/// in size, so m > 9 raises ResourceError (stream instead).
inline std::vector<Permutation> enumerate_compatible(const std::vector<Permutation>& existing, int m) {
    if (m > 9)
        throw ResourceError("enumerate_compatible: m > 9 would materialize a factorial list; "
                            "use for_each_compatible");
    std::vector<Permutation> out;
    for_each_compatible(m, existing, [&](const Permutation& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

/// Permutations q compatible with p such that beta_of(p, q) == beta,
/// in lexicographic order.  only_after keeps just the q that follow p
/// lexicographically.
inline std::vector<Permutation> enumerate_compatible_with_partition(const Permutation& p,
                                                                    const Partition& beta,
                                                                    bool only_after = false) {
    if (beta.m() != p.m())
        throw DomainError("enumerate_compatible_with_partition: beta must partition m");
    if (p.m() > 9)
        throw ResourceError("enumerate_compatible_with_partition: m > 9; stream and filter instead");
    std::vector<Permutation> out;
    for_each_compatible(p.m(), {p}, [&](const Permutation& q) {
        if (only_after && !(p < q)) return true;
        if (beta_of(p, q) == beta) out.push_back(q);
        return true;
    });
    return out;
}

/// Published closed-form estimate for how many q realize a given beta
/// against a fixed chain of r-1 predecessors:
///   (m-r+1) * sum over distinct part values v of
///            (m-r+1)! / ((v-1) * prod of the other parts)
/// Exact rational: the expression is non-integral for some r > 2 inputs.
/// Known to diverge from exhaustive counts on multi-part partitions
/// (e.g. m=4, r=2, (2,2): formula 9, actual 3); callers report the two
/// side by side rather than asserting agreement.
inline Rational f_beta_closed_form(int m, int r, const Partition& beta) {
    if (r < 2 || r > m) throw DomainError("f_beta_closed_form: need 2 <= r <= m");
    if (beta.m() != m) throw DomainError("f_beta_closed_form: beta must partition m");
    BigInt fact = factorial(m - r + 1);
    BigInt prod_all = 1;
    for (int q : beta.parts()) prod_all *= q;
    Rational sum = 0;
    std::vector<int> seen;
    for (int v : beta.parts()) {
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
        seen.push_back(v);
        // denominator (v-1) * prod of parts excluding one copy of v
        sum += Rational(fact * v, BigInt(v - 1) * prod_all);
    }
    return Rational(m - r + 1) * sum;
}

/// Nodes at a given depth of the permutation prefix tree on m labels
/// (depth 0 is the root): m * (m-1) * ... * (m-depth+1).
inline BigInt permutation_tree_node_count(int m, int depth) {
    if (m < 1) throw DomainError("permutation_tree_node_count: m must be >= 1");
    if (depth < 0 || depth > m) throw DomainError("permutation_tree_node_count: depth must be in 0..m");
    BigInt n = 1;
    for (int l = 0; l < depth; ++l) n *= (m - l);
    return n;
}

/// Successor counts along b's path when the tree is pruned by a:
/// actual[i-1] simulates depth i directly (labels neither used by
/// b's prefix nor equal to a's label there); predicted[i-1] is the
/// closed form m - i + delta, delta = 1 iff a's label at depth i
/// already occurred in b's prefix.  Both are returned so callers can
/// report agreement rather than assume it.
struct SuccessorProfile {
    std::vector<int> actual;
    std::vector<int> predicted;
    bool agrees = false;
};

inline SuccessorProfile successor_profile(const Permutation& a, const Permutation& b) {
    if (!is_compatible(a, b)) throw DomainError("successor_profile: pair must be compatible");
    int m = a.m();
    SuccessorProfile out;
    for (int i = 1; i <= m; ++i) {
        int xi = a.images()[static_cast<std::size_t>(i - 1)];
        bool in_prefix = false;
        int actual = 0;
        for (int k = 0; k < i - 1; ++k)
            if (b.images()[static_cast<std::size_t>(k)] == xi) in_prefix = true;
        for (int label = 1; label <= m; ++label) {
            if (label == xi) continue;
            bool used = false;
            for (int k = 0; k < i - 1; ++k)
                if (b.images()[static_cast<std::size_t>(k)] == label) used = true;
            if (!used) ++actual;
        }
        out.actual.push_back(actual);
        out.predicted.push_back(m - i + (in_prefix ? 1 : 0));
    }
    out.agrees = out.actual == out.predicted;
    return out;
}

} // namespace btu
