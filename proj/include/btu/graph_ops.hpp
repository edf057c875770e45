#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "btu/errors.hpp"
#include "btu/matrix.hpp"
#include "btu/partition.hpp"

namespace btu {

/// The canonical (m,2) unit of a partition: every node pair CN_i/VN_i is
/// joined, and each part q occupying the next q labels s+1..s+q adds the
/// cycle edges CN_{s+z} - VN_{s+((z+1) mod q)}.  Each part thus becomes a
/// connected component on 2q nodes, a 2q-cycle.
inline Btu psi(const Partition& beta) {
    int m = beta.m();
    if (m > 64) throw DomainError("psi: m exceeds representable size 64");
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << i;
    int s = 0;
    for (int q : beta.parts()) {
        for (int z = 0; z < q; ++z)
            rows[static_cast<std::size_t>(s + z)] |= std::uint64_t{1} << (s + (z + 1) % q);
        s += q;
    }
    return Btu::from_rows(m, std::move(rows));
}

/// Cycle lengths of psi(beta) without building the graph: one 2q-cycle
/// per part q, in part order.
inline std::vector<int> known_cycle_lengths(const Partition& beta) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(beta.count()));
    for (int q : beta.parts()) out.push_back(2 * q);
    return out;
}

namespace detail {

/// Adjacency lists over 2m vertices: CN i -> i, VN j -> m + j.
inline std::vector<std::vector<int>> adjacency(const Btu& g) {
    int m = g.m();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(2 * m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (g.bit(i, j)) {
                adj[static_cast<std::size_t>(i)].push_back(m + j);
                adj[static_cast<std::size_t>(m + j)].push_back(i);
            }
    return adj;
}

} // namespace detail

/// Shortest cycle length, by BFS from every vertex (min over roots of the
/// first non-tree edge each BFS meets).  Bipartite, so always even.
/// Acyclic units (exactly the r=1 case) yield nullopt.
inline std::optional<int> girth(const Btu& g) {
    auto adj = detail::adjacency(g);
    int n = static_cast<int>(adj.size());
    int best = -1;
    std::vector<int> dist(static_cast<std::size_t>(n)), parent(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> q;
        dist[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : adj[static_cast<std::size_t>(u)]) {
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    parent[static_cast<std::size_t>(w)] = u;
                    q.push(w);
                } else if (w != parent[static_cast<std::size_t>(u)]) {
                    int len = dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(w)] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

/// A simple cycle as alternating 1-based labels [cn, vn, cn, vn, ...],
/// starting at the cycle's smallest CN label, oriented toward its smaller
/// VN neighbor.  size() is the cycle length.
using Cycle = std::vector<int>;

/// All simple cycles of length <= max_len, each reported once (rotations
/// and reflections identified).  max_len must be even and >= 4.
inline std::vector<Cycle> enumerate_cycles(const Btu& g, int max_len) {
    if (max_len < 4 || max_len % 2 != 0)
        throw DomainError("enumerate_cycles: max_len must be even and >= 4");
    auto adj = detail::adjacency(g);
    int n = static_cast<int>(adj.size());
    std::vector<Cycle> out;
    std::vector<int> path;
    std::vector<char> on_path(static_cast<std::size_t>(n), 0);
    // Cycles are keyed by their smallest vertex, which is always a CN
    // (CN ids precede VN ids and every cycle alternates sides).
    std::function<void(int, int)> dfs = [&](int start, int u) {
        for (int w : adj[static_cast<std::size_t>(u)]) {
            if (w == start && path.size() >= 4) {
                // reflection guard: second vertex below last vertex
                if (path[1] < path.back()) {
                    Cycle c;
                    c.reserve(path.size());
                    int m = g.m();
                    for (std::size_t k = 0; k < path.size(); ++k)
                        c.push_back(path[k] < m ? path[k] + 1 : path[k] - m + 1);
                    out.push_back(std::move(c));
                }
                continue;
            }
            if (w <= start || on_path[static_cast<std::size_t>(w)]) continue;
            if (static_cast<int>(path.size()) >= max_len) continue;
            path.push_back(w);
            on_path[static_cast<std::size_t>(w)] = 1;
            dfs(start, w);
            on_path[static_cast<std::size_t>(w)] = 0;
            path.pop_back();
        }
    };
    for (int s = 0; s < g.m(); ++s) { // starts only at CNs
        path.assign(1, s);
        on_path[static_cast<std::size_t>(s)] = 1;
        dfs(s, s);
        on_path[static_cast<std::size_t>(s)] = 0;
    }
    std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

/// The minimal 2-regular graph of girth G (a single G-cycle): psi((G/2)).
/// G must be even and >= 4.
inline Btu cage(int girth_target) {
    if (girth_target < 4 || girth_target % 2 != 0)
        throw DomainError("cage: girth must be even and >= 4");
    return psi(Partition({girth_target / 2}));
}

} // namespace btu
