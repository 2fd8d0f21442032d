#pragma once

#include <vector>

namespace symdyn {

// Maximum bipartite matching (Hopcroft-Karp). adj[b] lists girls of boy b.
// Returns match[b] = girl or -1.
std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adj, int num_girls);

}  // namespace symdyn
