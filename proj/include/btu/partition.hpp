#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "btu/errors.hpp"
#include "btu/numeric.hpp"

namespace btu {

/// An integer partition with every part >= 2, stored non-increasing.
/// Normalizes (sorts descending) on construction; immutable afterwards.
class Partition {
public:
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw DomainError("partition: needs at least one part");
        std::sort(parts_.begin(), parts_.end(), std::greater<int>());
        for (int p : parts_)
            if (p < 2) throw DomainError("partition: parts must be >= 2");
        m_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    }

    const std::vector<int>& parts() const { return parts_; }
    int m() const { return m_; }                                  ///< sum of parts
    int count() const { return static_cast<int>(parts_.size()); } ///< number of parts
    int min_part() const { return parts_.back(); }
    int max_part() const { return parts_.front(); }

    friend auto operator<=>(const Partition&, const Partition&) = default;

    /// "(4,2)"
    std::string to_string() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < parts_.size(); ++i)
            os << (i ? "," : "") << parts_[i];
        os << ')';
        return os.str();
    }

    /// Inverse of to_string(); accepts optional whitespace, e.g. "(4, 2)".
    static Partition parse(std::string_view text) {
        std::string s(text);
        std::size_t a = s.find('('), b = s.rfind(')');
        if (a == std::string::npos || b == std::string::npos || b < a)
            throw DomainError("partition: expected \"(q1,q2,...)\", got \"" + s + "\"");
        std::string body = s.substr(a + 1, b - a - 1);
        std::vector<int> parts;
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = body.find(',', pos);
            std::string tok = body.substr(pos, comma - pos);
            std::istringstream is(tok);
            int q;
            if (!(is >> q) || !(is >> std::ws).eof())
                throw DomainError("partition: bad part \"" + tok + "\" in \"" + s + "\"");
            parts.push_back(q);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return Partition(std::move(parts));
    }

private:
    std::vector<int> parts_;
    int m_ = 0;
};

namespace detail {

/// Visit every partition of m with all parts >= min_part, parts emitted
/// non-increasing, partitions in decreasing lexicographic order of the
/// part lists.  Shared by the public all-parts->=2 enumerator and by the
/// cycle-index code (which needs min_part = 1).
inline void for_each_partition_min(int m, int min_part,
                                   const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            visit(parts);
            return;
        }
        for (int p = std::min(max_part, remaining); p >= min_part; --p) {
            if (remaining - p != 0 && remaining - p < min_part) continue;
            parts.push_back(p);
            rec(remaining - p, p);
            parts.pop_back();
        }
    };
    rec(m, m);
}

} // namespace detail

/// All partitions of m with every part >= 2, in decreasing lexicographic
/// order of the descending part lists, e.g. m=6 -> (6),(4,2),(3,3),(2,2,2).
inline std::vector<Partition> enumerate_p2(int m) {
    if (m < 2) throw DomainError("enumerate_p2: m must be >= 2");
    std::vector<Partition> out;
    detail::for_each_partition_min(m, 2, [&](const std::vector<int>& parts) {
        out.emplace_back(parts);
    });
    return out;
}

/// p(m): number of unrestricted partitions of m (p(0) = 1), exact.
inline BigInt count_unrestricted(int m) {
    if (m < 0) throw DomainError("count_unrestricted: m must be >= 0");
    // ways[n] = partitions of n into parts <= current k
    std::vector<BigInt> ways(static_cast<std::size_t>(m) + 1);
    ways[0] = 1;
    for (int k = 1; k <= m; ++k)
        for (int n = k; n <= m; ++n)
            ways[n] += ways[n - k];
    return ways[m];
}

/// Number of partitions of m with all parts >= 2; equals p(m) - p(m-1),
/// which tests verify against direct enumeration.
inline BigInt count_p2(int m) {
    if (m < 2) throw DomainError("count_p2: m must be >= 2");
    return count_unrestricted(m) - count_unrestricted(m - 1);
}

} // namespace btu
