#include "symdyn/matching.hpp"

#include <deque>
#include <limits>

namespace symdyn {

std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adj, int num_girls) {
    const int nb = static_cast<int>(adj.size());
    const int inf = std::numeric_limits<int>::max();
    std::vector<int> match_b(nb, -1), match_g(num_girls, -1), dist(nb);

    auto bfs = [&]() {
        std::deque<int> q;
        bool found = false;
        for (int b = 0; b < nb; ++b) {
            if (match_b[b] < 0) {
                dist[b] = 0;
                q.push_back(b);
            } else {
                dist[b] = inf;
            }
        }
        while (!q.empty()) {
            const int b = q.front();
            q.pop_front();
            for (int g : adj[b]) {
                const int b2 = match_g[g];
                if (b2 < 0) {
                    found = true;
                } else if (dist[b2] == inf) {
                    dist[b2] = dist[b] + 1;
                    q.push_back(b2);
                }
            }
        }
        return found;
    };

    // Iterative DFS along the layered graph.
    std::vector<std::size_t> it(nb);
    auto dfs = [&](int root) {
        std::vector<int> path{root};
        while (!path.empty()) {
            const int b = path.back();
            if (it[b] == adj[b].size()) {
                dist[b] = inf;
                path.pop_back();
                continue;
            }
            const int g = adj[b][it[b]++];
            const int b2 = match_g[g];
            if (b2 < 0) {
                // Augment along the stack.
                int girl = g;
                for (auto p = path.rbegin(); p != path.rend(); ++p) {
                    const int prev = match_b[*p];
                    match_b[*p] = girl;
                    match_g[girl] = *p;
                    girl = prev;
                }
                return true;
            }
            if (dist[b2] == dist[b] + 1) path.push_back(b2);
        }
        return false;
    };

    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        for (int b = 0; b < nb; ++b)
            if (match_b[b] < 0) dfs(b);
    }
    return match_b;
}

}  // namespace symdyn
