#pragma once

#include <vector>

#include "monopath/numeric.hpp"

namespace monopath {

// Hopcroft-Karp maximum matching over side indices 0..nl-1 / 0..nr-1, plus the
// standard alternating-reachability vertex cover, so both certificate halves
// come from one run.
struct BipartiteMatcher {
    int nl = 0, nr = 0;
    std::vector<std::vector<int>> adj;  // left index -> right indices

    explicit BipartiteMatcher(int left, int right) : nl(left), nr(right), adj(size_t(left)) {}
    void add_edge(int l, int r) { adj[size_t(l)].push_back(r); }

    std::vector<int> match_l, match_r;  // -1 when unmatched

    int solve();

    // Must be called after solve(). Returns (left cover indices, right cover
    // indices); the union touches every edge and has size |matching|.
    std::pair<std::vector<int>, std::vector<int>> min_vertex_cover() const;
};

}  // namespace monopath
