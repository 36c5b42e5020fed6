#include "hyperdisc/matching.hpp"

#include <limits>
#include <queue>

namespace hyperdisc {

namespace {

struct HopcroftKarp {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> match_l, match_r, dist;
    static constexpr int kInf = std::numeric_limits<int>::max();

    HopcroftKarp(int n_left, int n_right, const std::vector<std::vector<int>>& a)
        : adj(a), match_l(static_cast<std::size_t>(n_left), -1),
          match_r(static_cast<std::size_t>(n_right), -1),
          dist(static_cast<std::size_t>(n_left), 0) {}

    bool bfs() {
        std::queue<int> q;
        bool reachable_free = false;
        for (std::size_t u = 0; u < match_l.size(); ++u) {
            if (match_l[u] < 0) { dist[u] = 0; q.push(static_cast<int>(u)); }
            else dist[u] = kInf;
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[static_cast<std::size_t>(u)]) {
                int w = match_r[static_cast<std::size_t>(v)];
                if (w < 0) {
                    reachable_free = true;
                } else if (dist[static_cast<std::size_t>(w)] == kInf) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    q.push(w);
                }
            }
        }
        return reachable_free;
    }

    bool dfs(int u) {
        for (int v : adj[static_cast<std::size_t>(u)]) {
            int w = match_r[static_cast<std::size_t>(v)];
            if (w < 0 || (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(u)] + 1 && dfs(w))) {
                match_l[static_cast<std::size_t>(u)] = v;
                match_r[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        dist[static_cast<std::size_t>(u)] = kInf;
        return false;
    }
};

}  // namespace

std::vector<std::pair<int, int>> max_bipartite_matching(int n_left, int n_right,
                                                        const std::vector<std::vector<int>>& adj) {
    HopcroftKarp hk(n_left, n_right, adj);
    while (hk.bfs()) {
        for (int u = 0; u < n_left; ++u)
            if (hk.match_l[static_cast<std::size_t>(u)] < 0) hk.dfs(u);
    }
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_left; ++u)
        if (hk.match_l[static_cast<std::size_t>(u)] >= 0)
            out.emplace_back(u, hk.match_l[static_cast<std::size_t>(u)]);
    return out;
}

}  // namespace hyperdisc
