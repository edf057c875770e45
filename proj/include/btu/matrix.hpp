#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "btu/errors.hpp"

namespace btu {

/// A balanced Tanner unit: an m x m 0/1 matrix whose rows and columns all
/// sum to the same r (1 <= r <= m).  Equivalently an r-regular bipartite
/// graph on m check nodes (rows, labels CN 1..m) and m variable nodes
/// (columns, labels VN 1..m); entry (i,j)=1 is the edge CN_{i+1} - VN_{j+1}.
///
/// Rows are bit-packed: bit j of row(i) is entry (i,j).  m is capped at 64
/// by the representation; the expensive operations guard far lower.
class Btu {
public:
    /// Validates shape and regularity; throws DomainError otherwise.
    static Btu from_rows(int m, std::vector<std::uint64_t> rows) {
        if (m < 1 || m > 64) throw DomainError("btu: m must be in 1..64");
        if (static_cast<int>(rows.size()) != m) throw DomainError("btu: wrong row count");
        const std::uint64_t full = mask(m);
        int r = std::popcount(rows[0] & full);
        std::vector<int> colsum(m, 0);
        for (std::uint64_t row : rows) {
            if (row & ~full) throw DomainError("btu: bits set beyond column m");
            if (std::popcount(row) != r) throw DomainError("btu: unequal row sums");
            for (int j = 0; j < m; ++j) colsum[j] += (row >> j) & 1u;
        }
        for (int j = 0; j < m; ++j)
            if (colsum[j] != r) throw DomainError("btu: column sum != row sum");
        if (r < 1) throw DomainError("btu: r must be >= 1");
        return Btu(m, r, std::move(rows));
    }

    int m() const { return m_; }
    int r() const { return r_; }
    std::uint64_t row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
    bool bit(int i, int j) const { return (rows_[static_cast<std::size_t>(i)] >> j) & 1u; }

    /// Column j as a bitmask over rows (bit i = entry (i,j)).
    std::uint64_t column(int j) const {
        std::uint64_t c = 0;
        for (int i = 0; i < m_; ++i) c |= static_cast<std::uint64_t>((rows_[i] >> j) & 1u) << i;
        return c;
    }

    friend bool operator==(const Btu&, const Btu&) = default;

    static std::uint64_t mask(int m) {
        return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    }

    /// "m r" header line, then m rows of m space-separated 0/1 entries.
    std::string to_text() const {
        std::ostringstream os;
        os << m_ << ' ' << r_ << '\n';
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < m_; ++j) os << (j ? " " : "") << (bit(i, j) ? 1 : 0);
            os << '\n';
        }
        return os.str();
    }

    /// Reads one matrix in to_text() form; validates regularity against the
    /// declared r.  Throws DomainError on malformed input.
    static Btu from_stream(std::istream& is) {
        int m = 0, r = 0;
        if (!(is >> m >> r)) throw DomainError("btu: expected \"m r\" header");
        if (m < 1 || m > 64) throw DomainError("btu: m must be in 1..64");
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                int v;
                if (!(is >> v) || (v != 0 && v != 1))
                    throw DomainError("btu: entries must be 0/1 and complete");
                if (v) rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
            }
        Btu g = from_rows(m, std::move(rows));
        if (g.r() != r) throw DomainError("btu: header r does not match matrix");
        return g;
    }

    static Btu from_text(const std::string& text) {
        std::istringstream is(text);
        return from_stream(is);
    }

private:
    Btu(int m, int r, std::vector<std::uint64_t> rows)
        : m_(m), r_(r), rows_(std::move(rows)) {}

    int m_;
    int r_;
    std::vector<std::uint64_t> rows_;
};

/// Bit-flip complement: an (m,r) unit maps to an (m,m-r) unit.  r == m is
/// rejected (the flip would leave a 0-regular matrix, which is not a unit).
inline Btu complement(const Btu& g) {
    if (g.r() == g.m()) throw DomainError("complement: r == m has no complement unit");
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(g.m()));
    for (int i = 0; i < g.m(); ++i) rows[static_cast<std::size_t>(i)] = ~g.row(i) & Btu::mask(g.m());
    return Btu::from_rows(g.m(), std::move(rows));
}

/// Rank of the matrix over GF(2), by bit-packed Gaussian elimination.
inline int gf2_rank(const Btu& g) {
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(g.m()));
    for (int i = 0; i < g.m(); ++i) rows[static_cast<std::size_t>(i)] = g.row(i);
    int rank = 0;
    for (int j = 0; j < g.m() && rank < g.m(); ++j) {
        int pivot = -1;
        for (int i = rank; i < g.m(); ++i)
            if ((rows[static_cast<std::size_t>(i)] >> j) & 1u) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(pivot)], rows[static_cast<std::size_t>(rank)]);
        for (int i = 0; i < g.m(); ++i)
            if (i != rank && ((rows[static_cast<std::size_t>(i)] >> j) & 1u))
                rows[static_cast<std::size_t>(i)] ^= rows[static_cast<std::size_t>(rank)];
        ++rank;
    }
    return rank;
}

} // namespace btu
