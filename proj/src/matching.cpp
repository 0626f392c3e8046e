#include "monopath/matching.hpp"

#include <functional>
#include <limits>

namespace monopath {

namespace {
constexpr int kInf = std::numeric_limits<int>::max();
}

int BipartiteMatcher::solve() {
    match_l.assign(size_t(nl), -1);
    match_r.assign(size_t(nr), -1);
    std::vector<int> dist(static_cast<size_t>(nl), 0);
    std::vector<int> queue_buf;
    queue_buf.reserve(size_t(nl));

    auto bfs = [&]() -> bool {
        queue_buf.clear();
        for (int u = 0; u < nl; ++u) {
            if (match_l[size_t(u)] == -1) {
                dist[size_t(u)] = 0;
                queue_buf.push_back(u);
            } else {
                dist[size_t(u)] = kInf;
            }
        }
        bool found_free = false;
        for (size_t qi = 0; qi < queue_buf.size(); ++qi) {
            int u = queue_buf[qi];
            for (int v : adj[size_t(u)]) {
                int w = match_r[size_t(v)];
                if (w == -1) {
                    found_free = true;
                } else if (dist[size_t(w)] == kInf) {
                    dist[size_t(w)] = dist[size_t(u)] + 1;
                    queue_buf.push_back(w);
                }
            }
        }
        return found_free;
    };

    std::function<bool(int)> dfs = [&](int u) -> bool {
        for (int v : adj[size_t(u)]) {
            int w = match_r[size_t(v)];
            if (w == -1 || (dist[size_t(w)] == dist[size_t(u)] + 1 && dfs(w))) {
                match_l[size_t(u)] = v;
                match_r[size_t(v)] = u;
                return true;
            }
        }
        dist[size_t(u)] = kInf;
        return false;
    };

    int matched = 0;
    while (bfs()) {
        for (int u = 0; u < nl; ++u) {
            if (match_l[size_t(u)] == -1 && dfs(u)) ++matched;
        }
    }
    return matched;
}

std::pair<std::vector<int>, std::vector<int>> BipartiteMatcher::min_vertex_cover() const {
    // Z = unmatched left vertices plus everything alternating-reachable from
    // them; cover = (L \ Z) ∪ (R ∩ Z).
    std::vector<char> zl(size_t(nl), 0), zr(size_t(nr), 0);
    std::vector<int> stack;
    for (int u = 0; u < nl; ++u) {
        if (match_l[size_t(u)] == -1) {
            zl[size_t(u)] = 1;
            stack.push_back(u);
        }
    }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[size_t(u)]) {
            if (zr[size_t(v)]) continue;
            zr[size_t(v)] = 1;
            int w = match_r[size_t(v)];
            if (w != -1 && !zl[size_t(w)]) {
                zl[size_t(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    std::vector<int> left, right;
    for (int u = 0; u < nl; ++u) {
        if (!zl[size_t(u)]) left.push_back(u);
    }
    for (int v = 0; v < nr; ++v) {
        if (zr[size_t(v)]) right.push_back(v);
    }
    return {left, right};
}

}  // namespace monopath
