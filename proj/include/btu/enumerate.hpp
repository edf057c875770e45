#pragma once

#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "btu/canonical.hpp"
#include "btu/errors.hpp"
#include "btu/graph_ops.hpp"
#include "btu/matrix.hpp"
#include "btu/numeric.hpp"
#include "btu/partition.hpp"

namespace btu {

/// Budget for the brute-force enumerator.  threads == 0 picks the
/// hardware count; no timeout by default (the CLI installs one).
struct EnumerationLimits {
    int max_m = 7;
    std::optional<std::chrono::milliseconds> timeout;
    int threads = 0;
};

namespace detail {

// Labeled row-by-row backtracking for general r, first row pinned to
// columns 0..r-1 (every class has such a representative, so nothing is
// lost; the factor saved is C(m,r)).  Each completed matrix is reduced
// to its canonical key; keys dedupe into per-worker sets.
struct BruteEnumerator {
    int m, r;
    std::vector<std::uint64_t> patterns; // all weight-r rows, ascending
    std::chrono::steady_clock::time_point deadline;
    bool has_deadline = false;
    std::atomic<bool> expired{false};

    BruteEnumerator(int m_in, int r_in) : m(m_in), r(r_in) {
        for (std::uint64_t pat = 0; pat < (std::uint64_t{1} << m); ++pat)
            if (std::popcount(pat) == r) patterns.push_back(pat);
    }

    bool out_of_time() {
        if (!has_deadline) return false;
        if (std::chrono::steady_clock::now() >= deadline) {
            expired.store(true, std::memory_order_relaxed);
            return true;
        }
        return expired.load(std::memory_order_relaxed);
    }

    // rows[0..depth) chosen; colcount per column; emit into `keys`.
    void dfs(int depth, std::vector<std::uint64_t>& rows, std::vector<int>& colcount,
             std::set<CanonicalKey>& keys, int& tick) {
        if (depth == m) {
            keys.insert(canonical_key(Btu::from_rows(m, rows), m));
            if (++tick >= 256) {
                tick = 0;
                if (out_of_time()) return;
            }
            return;
        }
        std::uint64_t full = 0, urgent = 0;
        int remaining = m - depth;
        for (int j = 0; j < m; ++j) {
            if (colcount[static_cast<std::size_t>(j)] == r) full |= std::uint64_t{1} << j;
            if (r - colcount[static_cast<std::size_t>(j)] == remaining) urgent |= std::uint64_t{1} << j;
        }
        for (std::uint64_t pat : patterns) {
            if (pat & full) continue;
            if (urgent & ~pat) continue;
            if (expired.load(std::memory_order_relaxed)) return;
            rows[static_cast<std::size_t>(depth)] = pat;
            for (int j = 0; j < m; ++j) colcount[static_cast<std::size_t>(j)] += (pat >> j) & 1u;
            dfs(depth + 1, rows, colcount, keys, tick);
            for (int j = 0; j < m; ++j) colcount[static_cast<std::size_t>(j)] -= (pat >> j) & 1u;
        }
    }

    std::set<CanonicalKey> run(int threads) {
        const std::uint64_t first = (std::uint64_t{1} << r) - 1;
        // tasks: the feasible second rows; each subtree is independent
        std::vector<std::uint64_t> tasks;
        if (m == 1) {
            std::set<CanonicalKey> keys;
            std::vector<std::uint64_t> rows{first};
            return {canonical_key(Btu::from_rows(1, rows), 1)};
        }
        for (std::uint64_t pat : patterns) {
            bool ok = true;
            for (int j = 0; j < m && ok; ++j) {
                int cc = static_cast<int>((first >> j) & 1u) + static_cast<int>((pat >> j) & 1u);
                if (cc > r || r - cc > m - 2) ok = false;
            }
            if (ok) tasks.push_back(pat);
        }
        if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
        if (threads > static_cast<int>(tasks.size())) threads = static_cast<int>(tasks.size());
        std::atomic<std::size_t> next{0};
        std::vector<std::set<CanonicalKey>> partial(static_cast<std::size_t>(threads));
        auto worker = [&](int w) {
            std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
            std::vector<int> colcount(static_cast<std::size_t>(m), 0);
            rows[0] = first;
            for (int j = 0; j < r; ++j) colcount[static_cast<std::size_t>(j)] = 1;
            int tick = 0;
            for (;;) {
                std::size_t t = next.fetch_add(1);
                if (t >= tasks.size() || expired.load(std::memory_order_relaxed)) break;
                std::uint64_t pat = tasks[t];
                rows[1] = pat;
                for (int j = 0; j < m; ++j) colcount[static_cast<std::size_t>(j)] += (pat >> j) & 1u;
                dfs(2, rows, colcount, partial[static_cast<std::size_t>(w)], tick);
                for (int j = 0; j < m; ++j) colcount[static_cast<std::size_t>(j)] -= (pat >> j) & 1u;
                if (out_of_time()) break;
            }
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
            for (auto& th : pool) th.join();
        }
        if (expired.load()) throw ResourceError("enumerate_nonisomorphic: timeout expired");
        std::set<CanonicalKey> keys;
        for (auto& p : partial) keys.merge(p);
        return keys;
    }
};

} // namespace detail

/// One representative per isomorphism class of (m,r) units.
/// r == 1: the identity matrix is the single class (any m <= 30).
/// r == 2: one class per partition — psi(beta) for beta in enumerate_p2(m),
///         in that order (any m <= 30).
/// otherwise: brute force (guarded by limits.max_m and the canonical-form
///         hard cap), emitting canonical forms in ascending key order.
inline std::vector<Btu> enumerate_nonisomorphic(int m, int r,
                                                const EnumerationLimits& limits = {}) {
    if (m < 1 || r < 1 || r > m) throw DomainError("enumerate_nonisomorphic: need 1 <= r <= m");
    if (r <= 2 && m > 30)
        throw ResourceError("enumerate_nonisomorphic: m > 30 unsupported");
    if (r == 1) {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) rows[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
        return {Btu::from_rows(m, std::move(rows))};
    }
    if (r == 2) {
        std::vector<Btu> out;
        for (const auto& beta : enumerate_p2(m)) out.push_back(psi(beta));
        return out;
    }
    int cap = std::min(limits.max_m, detail::kCanonHardCap);
    if (m > cap)
        throw ResourceError("enumerate_nonisomorphic: m=" + std::to_string(m) +
                            " exceeds brute-force limit " + std::to_string(cap));
    detail::BruteEnumerator be(m, r);
    if (limits.timeout) {
        be.deadline = std::chrono::steady_clock::now() + *limits.timeout;
        be.has_deadline = true;
    }
    auto keys = be.run(limits.threads);
    std::vector<Btu> out;
    out.reserve(keys.size());
    for (const auto& k : keys) out.push_back(k.to_btu());
    return out;
}

namespace detail {
inline BigInt count_nonisomorphic_nocheck(int m, int r, const EnumerationLimits& limits) {
    return BigInt(enumerate_nonisomorphic(m, r, limits).size());
}
} // namespace detail

/// Class count E(m,r).  For m <= 6 the complement symmetry
/// E(m,r) == E(m,m-r) is cheap on both sides and verified outright;
/// a mismatch would be an internal bug, not bad input.
inline BigInt count_nonisomorphic(int m, int r, const EnumerationLimits& limits = {}) {
    BigInt n = detail::count_nonisomorphic_nocheck(m, r, limits);
    if (m <= 6 && r < m) {
        BigInt mirror = detail::count_nonisomorphic_nocheck(m, m - r, limits);
        if (mirror != n)
            throw std::logic_error("count_nonisomorphic: complement symmetry violated");
    }
    return n;
}

} // namespace btu
