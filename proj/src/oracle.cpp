#include "monopath/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <thread>

#include "monopath/errors.hpp"
#include "monopath/matching.hpp"

namespace monopath {

namespace {

// dp[mask] = bitset of endpoints v such that some path visits exactly mask and
// ends at v; seeds restrict the allowed starting vertices.
std::vector<std::uint32_t> path_masks(int n, const std::vector<std::uint32_t>& adj, std::uint32_t seeds) {
    std::vector<std::uint32_t> dp(size_t(1) << n, 0);
    for (int v = 0; v < n; ++v) {
        if (seeds & (1u << v)) dp[size_t(1) << v] = 1u << v;
    }
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::uint32_t ends = dp[mask];
        if (!ends) continue;
        while (ends) {
            int v = std::countr_zero(ends);
            ends &= ends - 1;
            std::uint32_t nexts = adj[size_t(v)] & ~mask;
            while (nexts) {
                int u = std::countr_zero(nexts);
                nexts &= nexts - 1;
                dp[mask | (1u << u)] |= 1u << u;
            }
        }
    }
    return dp;
}

// longest path over one color's adjacency without materializing witnesses
int longest_path_len(int n, const std::vector<std::uint32_t>& adj) {
    std::vector<std::uint32_t> dp(size_t(1) << n, 0);
    for (int v = 0; v < n; ++v) dp[size_t(1) << v] = 1u << v;
    int best = 1;
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::uint32_t ends = dp[mask];
        if (!ends) continue;
        best = std::max(best, std::popcount(mask));
        while (ends) {
            int v = std::countr_zero(ends);
            ends &= ends - 1;
            std::uint32_t nexts = adj[size_t(v)] & ~mask;
            while (nexts) {
                int u = std::countr_zero(nexts);
                nexts &= nexts - 1;
                dp[mask | (1u << u)] |= 1u << u;
            }
        }
    }
    return best;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    if (const char* env = std::getenv("MONOPATH_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(std::min(hw, 16u));
}

// shared evaluation core for both gg modes
i64 best_mono_path_for_mask(int n, std::uint64_t red_mask) {
    std::vector<std::uint32_t> red(size_t(n), 0), blue(size_t(n), 0);
    int e = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++e) {
            if (red_mask & (1ULL << e)) {
                red[size_t(u)] |= 1u << v;
                red[size_t(v)] |= 1u << u;
            } else {
                blue[size_t(u)] |= 1u << v;
                blue[size_t(v)] |= 1u << u;
            }
        }
    }
    return std::max(longest_path_len(n, red), longest_path_len(n, blue));
}

}  // namespace

PathWitness longest_mono_path(const TotalColoredGraph& g, Color color, i64 cap) {
    i64 n = g.size();
    if (n > cap) {
        throw PreconditionError("n = " + std::to_string(n) + " exceeds the path-search cap " + std::to_string(cap));
    }
    if (n > 24) throw PreconditionError("subset search is limited to 24 vertices");
    std::vector<std::uint32_t> adj(size_t(n), 0);
    for (Vertex u = 1; u <= n; ++u) {
        for (Vertex v = u + 1; v <= n; ++v) {
            if (auto c = g.edge(u, v); c && *c == color) {
                adj[size_t(u - 1)] |= 1u << (v - 1);
                adj[size_t(v - 1)] |= 1u << (u - 1);
            }
        }
    }
    auto dp = path_masks(int(n), adj, (n >= 32) ? ~0u : ((1u << n) - 1));
    std::uint32_t best_mask = 0;
    int best_pop = 0;
    for (std::uint32_t mask = 1; mask < dp.size(); ++mask) {
        if (dp[mask] && std::popcount(mask) > best_pop) {
            best_pop = std::popcount(mask);
            best_mask = mask;
        }
    }
    PathWitness w;
    w.length = best_pop;
    if (best_pop == 0) return w;  // cannot happen for n >= 1
    // walk the dp backwards from any admissible endpoint
    std::uint32_t mask = best_mask;
    int v = std::countr_zero(dp[mask]);
    w.path.push_back(Vertex(v + 1));
    while (std::popcount(mask) > 1) {
        std::uint32_t prev_mask = mask & ~(1u << v);
        std::uint32_t prevs = dp[prev_mask] & adj[size_t(v)];
        int u = std::countr_zero(prevs);
        w.path.push_back(Vertex(u + 1));
        mask = prev_mask;
        v = u;
    }
    std::reverse(w.path.begin(), w.path.end());
    return w;
}

GgReport gg_verify_exhaustive(i64 n, int workers) {
    if (n < 2) throw PreconditionError("n must be at least 2");
    if (n > 7) throw PreconditionError("exhaustive mode is capped at n = 7");
    i64 edges = n * (n - 1) / 2;
    i64 total = i64(1) << edges;
    int w = resolve_workers(workers);
    std::vector<i64> mins(size_t(w), INT64_MAX);
    std::vector<std::thread> pool;
    for (int wi = 0; wi < w; ++wi) {
        pool.emplace_back([&, wi]() {
            i64 local = INT64_MAX;
            for (i64 mask = wi; mask < total; mask += w) {
                local = std::min(local, best_mono_path_for_mask(int(n), std::uint64_t(mask)));
            }
            mins[size_t(wi)] = local;
        });
    }
    for (auto& th : pool) th.join();
    GgReport rep;
    rep.n = n;
    rep.bound = (2 * n + 1 + 2) / 3;  // ceil((2n+1)/3)
    rep.colorings = total;
    rep.min_of_max = *std::min_element(mins.begin(), mins.end());
    rep.pass = rep.min_of_max >= rep.bound;
    rep.tight = rep.min_of_max == rep.bound;
    return rep;
}

GgReport gg_verify_sampled(i64 n, i64 samples, std::uint64_t seed, int workers) {
    if (n < 2 || n > 20) throw PreconditionError("sampled mode handles 2 <= n <= 20");
    if (samples < 1) throw PreconditionError("need at least one sample");
    i64 edges = n * (n - 1) / 2;
    int w = resolve_workers(workers);
    std::vector<i64> mins(size_t(w), INT64_MAX);
    std::vector<std::thread> pool;
    for (int wi = 0; wi < w; ++wi) {
        pool.emplace_back([&, wi]() {
            i64 local = INT64_MAX;
            for (i64 s = wi; s < samples; s += w) {
                // counter-based bits: sample s is a pure function of (seed, s)
                std::uint64_t mask = 0;
                for (i64 word = 0; word * 64 < edges; ++word) {
                    std::uint64_t bits = splitmix64(seed ^ (0x51F15EEDULL + std::uint64_t(s) * 2654435761ULL +
                                                            std::uint64_t(word) * 0xA5A5A5A5ULL));
                    mask |= bits << (word * 64);
                }
                if (edges < 64) mask &= (1ULL << edges) - 1;
                local = std::min(local, best_mono_path_for_mask(int(n), mask));
            }
            mins[size_t(wi)] = local;
        });
    }
    for (auto& th : pool) th.join();
    GgReport rep;
    rep.n = n;
    rep.bound = (2 * n + 1 + 2) / 3;
    rep.colorings = samples;
    rep.min_of_max = *std::min_element(mins.begin(), mins.end());
    rep.pass = rep.min_of_max >= rep.bound;
    rep.tight = rep.min_of_max == rep.bound;
    return rep;
}

ForestOracleResult optimal_simple_forest(const TotalColoredGraph& g, Color color, i64 t) {
    if (t < 1 || t > g.size()) throw PreconditionError("horizon out of range");
    std::vector<Vertex> off_color;  // in [t], wrong vertex color
    std::vector<Vertex> partners = g.vertices_of(color);
    for (Vertex v = 1; v <= t; ++v) {
        if (g.vertex_color(v) != color) off_color.push_back(v);
    }
    BipartiteMatcher m(int(off_color.size()), int(partners.size()));
    for (size_t i = 0; i < off_color.size(); ++i) {
        for (size_t j = 0; j < partners.size(); ++j) {
            if (auto c = g.edge(off_color[i], partners[j]); c && *c == color) m.add_edge(int(i), int(j));
        }
    }
    int matched = m.solve();

    ForestOracleResult out;
    out.forest.color = color;
    std::vector<char> partner_used(partners.size(), 0);
    for (size_t i = 0; i < off_color.size(); ++i) {
        if (m.match_l[i] >= 0) {
            partner_used[size_t(m.match_l[i])] = 1;
            out.forest.edges.emplace_back(off_color[i], partners[size_t(m.match_l[i])]);
        }
    }
    for (size_t j = 0; j < partners.size(); ++j) {
        if (!partner_used[j]) out.forest.isolated.push_back(partners[j]);
    }
    i64 color_inside = 0;
    for (Vertex v = 1; v <= t; ++v) color_inside += (g.vertex_color(v) == color);
    out.coverage = color_inside + matched;
    return out;
}

FaithfulnessReport faithfulness_check(const GeometricColoring& c, i64 cap, bool require_color_endpoints) {
    i64 n = c.size();
    if (n > cap) {
        throw PreconditionError("prefix size " + std::to_string(n) + " exceeds the faithfulness cap " +
                                std::to_string(cap));
    }
    Reordering f = build_reordering(c);

    FaithfulnessReport rep;
    for (Color color : {Color::Red, Color::Blue}) {
        std::vector<std::uint32_t> adj(size_t(n), 0);
        std::uint32_t class_mask = 0;
        for (Vertex u = 1; u <= n; ++u) {
            if (c.vertex_color(u) == color) class_mask |= 1u << (u - 1);
            for (Vertex v = u + 1; v <= n; ++v) {
                if (c.edge_color(u, v) == color) {
                    adj[size_t(u - 1)] |= 1u << (v - 1);
                    adj[size_t(v - 1)] |= 1u << (u - 1);
                }
            }
        }
        std::uint32_t seeds = require_color_endpoints ? class_mask : ((n >= 32) ? ~0u : ((1u << n) - 1));
        std::uint32_t end_filter = seeds;
        auto dp = path_masks(int(n), adj, seeds);

        // benchmark against the un-truncated matching's vertex shadow; the
        // finite pair list loses the last block's coverage
        auto covered = matching_shadow(c, color);
        std::uint32_t m_mask = 0;
        for (Vertex v = 1; v <= n; ++v) {
            if (covered[size_t(v)]) m_mask |= 1u << (v - 1);
        }

        std::uint32_t fk_mask = 0;
        for (i64 k = 1; k <= n; ++k) {
            fk_mask |= 1u << (f(k) - 1);
            int best = 0;
            std::uint32_t best_path_mask = 0;
            for (std::uint32_t mask = 1; mask < dp.size(); ++mask) {
                if (!(dp[mask] & end_filter)) continue;
                // off-color singletons are trivial; only edge-paths are
                // interesting when the endpoint restriction is lifted
                if (!require_color_endpoints && std::popcount(mask) < 2) continue;
                int hit = std::popcount(mask & fk_mask);
                if (hit > best) {
                    best = hit;
                    best_path_mask = mask;
                }
            }
            int matching_hit = std::popcount(m_mask & fk_mask);
            if (best > matching_hit) {
                rep.ok = false;
                rep.color = color;
                rep.k = k;
                rep.path_coverage = best;
                rep.matching_coverage = matching_hit;
                for (int v = 0; v < n; ++v) {
                    if (best_path_mask & (1u << v)) rep.witness_path.push_back(Vertex(v + 1));
                }
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace monopath
