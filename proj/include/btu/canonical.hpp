#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "btu/errors.hpp"
#include "btu/matrix.hpp"

namespace btu {

namespace detail {
inline constexpr int kCanonHardCap = 12; // search is factorial; beyond this, use something else
}

/// Canonical label of an isomorphism class: the lexicographically minimal
/// row-major bit string of the matrix over all row and column permutations.
/// words[i] holds output row i with column 0 in the high bit (bit m-1-j is
/// column j), so comparing word vectors == comparing row-major bit strings.
struct CanonicalKey {
    int m = 0;
    std::vector<std::uint64_t> words;

    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

    /// Row-major bits packed MSB-first into bytes, as lowercase hex.
    std::string hex() const {
        std::string out;
        int acc = 0, nbits = 0;
        auto flush = [&] {
            static const char* digits = "0123456789abcdef";
            out += digits[(acc >> 4) & 0xf];
            out += digits[acc & 0xf];
            acc = 0;
            nbits = 0;
        };
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                acc = (acc << 1) | static_cast<int>((words[static_cast<std::size_t>(i)] >> (m - 1 - j)) & 1u);
                if (++nbits == 8) flush();
            }
        if (nbits) {
            acc <<= (8 - nbits);
            nbits = 8;
            flush();
        }
        return out;
    }

    /// The canonical form itself is a valid unit; rebuild it as one.
    Btu to_btu() const {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if ((words[static_cast<std::size_t>(i)] >> (m - 1 - j)) & 1u)
                    rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
        return Btu::from_rows(m, std::move(rows));
    }
};

/// Permutations realizing the canonical form: output position p takes
/// original row row_perm[p] and original column col_perm[p] (0-based).
struct CanonicalWitness {
    std::vector<int> row_perm;
    std::vector<int> col_perm;
};

namespace detail {

// Lexicographic-minimum search.  Rows are chosen position by position;
// the freedom left in the column order is an ordered partition of the
// columns ("blocks").  Within a block the current row's 0s must precede
// its 1s (anything else is lexicographically worse), which both fixes
// this row's contribution and splits the block for the rows below.
// Branching happens only on distinct rows that tie for the minimal
// contribution; a running best prunes whole subtrees.
struct CanonSearch {
    static constexpr int kMax = kCanonHardCap;

    int m = 0;
    std::array<std::uint64_t, kMax> rowmask{};
    std::array<std::array<std::uint64_t, kMax>, kMax + 1> blocks{};
    std::array<int, kMax + 1> nblocks{};
    std::array<std::uint64_t, kMax> cur{};
    std::array<int, kMax> cur_rows{};
    std::array<std::uint64_t, kMax> best{};
    std::array<int, kMax> best_rows{};
    std::array<std::uint64_t, kMax> best_blocks{};
    int best_nblocks = 0;
    bool have_best = false;

    void run(const Btu& g) {
        m = g.m();
        for (int i = 0; i < m; ++i) rowmask[static_cast<std::size_t>(i)] = g.row(i);
        blocks[0][0] = Btu::mask(m);
        nblocks[0] = 1;
        rec(0u, 0, false);
    }

    // Contribution of row `rm` at `depth`: per block, zeros then ones.
    std::uint64_t lexword(std::uint64_t rm, int depth) const {
        std::uint64_t w = 0;
        int pos = 0;
        for (int b = 0; b < nblocks[static_cast<std::size_t>(depth)]; ++b) {
            std::uint64_t blk = blocks[static_cast<std::size_t>(depth)][static_cast<std::size_t>(b)];
            int size = std::popcount(blk);
            int ones = std::popcount(blk & rm);
            if (ones) w |= ((std::uint64_t{1} << ones) - 1) << (m - pos - size);
            pos += size;
        }
        return w;
    }

    void refine(std::uint64_t rm, int depth) {
        int n = 0;
        for (int b = 0; b < nblocks[static_cast<std::size_t>(depth)]; ++b) {
            std::uint64_t blk = blocks[static_cast<std::size_t>(depth)][static_cast<std::size_t>(b)];
            std::uint64_t zeros = blk & ~rm, ones = blk & rm;
            if (zeros) blocks[static_cast<std::size_t>(depth) + 1][static_cast<std::size_t>(n++)] = zeros;
            if (ones) blocks[static_cast<std::size_t>(depth) + 1][static_cast<std::size_t>(n++)] = ones;
        }
        nblocks[static_cast<std::size_t>(depth) + 1] = n;
    }

    // `tight` <=> cur[0..depth) equals best[0..depth); only then can best prune.
    void rec(unsigned used, int depth, bool tight) {
        if (depth == m) {
            bool better = !have_best;
            if (!better)
                for (int i = 0; i < m; ++i) {
                    if (cur[static_cast<std::size_t>(i)] != best[static_cast<std::size_t>(i)]) {
                        better = cur[static_cast<std::size_t>(i)] < best[static_cast<std::size_t>(i)];
                        break;
                    }
                }
            if (better) {
                best = cur;
                best_rows = cur_rows;
                best_nblocks = nblocks[static_cast<std::size_t>(m)];
                for (int b = 0; b < best_nblocks; ++b)
                    best_blocks[static_cast<std::size_t>(b)] = blocks[static_cast<std::size_t>(m)][static_cast<std::size_t>(b)];
                have_best = true;
            }
            return;
        }
        std::array<int, kMax> cands{};
        std::array<std::uint64_t, kMax> seen{};
        int ncand = 0, nseen = 0;
        std::uint64_t minw = ~std::uint64_t{0};
        for (int i = 0; i < m; ++i) {
            if (used & (1u << i)) continue;
            std::uint64_t rm = rowmask[static_cast<std::size_t>(i)];
            bool dup = false;
            for (int s = 0; s < nseen; ++s)
                if (seen[static_cast<std::size_t>(s)] == rm) { dup = true; break; }
            if (dup) continue; // equal rows are interchangeable
            seen[static_cast<std::size_t>(nseen++)] = rm;
            std::uint64_t w = lexword(rm, depth);
            if (w < minw) {
                minw = w;
                ncand = 0;
                cands[static_cast<std::size_t>(ncand++)] = i;
            } else if (w == minw) {
                cands[static_cast<std::size_t>(ncand++)] = i;
            }
        }
        bool child_tight = false;
        if (have_best && tight) {
            if (minw > best[static_cast<std::size_t>(depth)]) return;
            child_tight = minw == best[static_cast<std::size_t>(depth)];
        }
        cur[static_cast<std::size_t>(depth)] = minw;
        for (int c = 0; c < ncand; ++c) {
            int i = cands[static_cast<std::size_t>(c)];
            cur_rows[static_cast<std::size_t>(depth)] = i;
            refine(rowmask[static_cast<std::size_t>(i)], depth);
            rec(used | (1u << i), depth + 1, child_tight);
        }
    }
};

} // namespace detail

/// Canonical key plus permutations that realize it.  Guarded: the search
/// is factorial, so m above max_m raises ResourceError.
inline std::pair<CanonicalKey, CanonicalWitness> canonical_form_with_witness(const Btu& g,
                                                                             int max_m = 8) {
    if (max_m > detail::kCanonHardCap) max_m = detail::kCanonHardCap;
    if (g.m() > max_m)
        throw ResourceError("canonical_key: m=" + std::to_string(g.m()) +
                            " exceeds configured limit " + std::to_string(max_m));
    detail::CanonSearch s;
    s.run(g);
    CanonicalKey key;
    key.m = g.m();
    key.words.assign(s.best.begin(), s.best.begin() + g.m());
    CanonicalWitness w;
    w.row_perm.assign(s.best_rows.begin(), s.best_rows.begin() + g.m());
    for (int b = 0; b < s.best_nblocks; ++b) {
        std::uint64_t blk = s.best_blocks[static_cast<std::size_t>(b)];
        while (blk) {
            int j = std::countr_zero(blk);
            blk &= blk - 1;
            w.col_perm.push_back(j); // within a block columns are identical; take ascending
        }
    }
    return {std::move(key), std::move(w)};
}

inline CanonicalKey canonical_key(const Btu& g, int max_m = 8) {
    return canonical_form_with_witness(g, max_m).first;
}

/// Isomorphism = equal canonical keys.  Shape or degree mismatch is a
/// negative answer, not an error.
inline bool is_isomorphic(const Btu& a, const Btu& b, int max_m = 8) {
    if (a.m() != b.m() || a.r() != b.r()) return false;
    return canonical_key(a, max_m) == canonical_key(b, max_m);
}

} // namespace btu
