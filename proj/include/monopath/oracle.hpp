#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "monopath/coloring.hpp"
#include "monopath/graphmodel.hpp"

namespace monopath {

// Exact longest path using only edges of the given color (vertex colors play
// no role), by subset dynamic programming over (vertex set, endpoint) states.
// A single vertex is a path of one vertex in either color.
struct PathWitness {
    i64 length = 0;  // in vertices
    std::vector<Vertex> path;
};

PathWitness longest_mono_path(const TotalColoredGraph& g, Color color, i64 cap = 20);

struct GgReport {
    i64 n = 0;
    i64 bound = 0;        // ceil((2n+1)/3)
    i64 min_of_max = 0;   // minimum over colorings of the best monochromatic path
    i64 colorings = 0;
    bool pass = false;    // every coloring reaches the bound
    bool tight = false;   // some coloring attains it exactly
};

// Checks that every (or every sampled) 2-edge-coloring of K_n has a
// monochromatic path on at least ceil((2n+1)/3) vertices. Exhaustive mode
// enumerates all 2^(n choose 2) colorings and is capped at n <= 7; sampling is
// deterministic per (seed, sample index) and splits across workers.
GgReport gg_verify_exhaustive(i64 n, int workers = 0);
GgReport gg_verify_sampled(i64 n, i64 samples, std::uint64_t seed, int workers = 0);

// Best |V(F) ∩ [t]| over valid simple forests of the color: isolated vertices
// cover the color class for free, so the only optimization is a maximum
// matching of off-color vertices in [t] into color-class partners.
struct ForestOracleResult {
    i64 coverage = 0;
    SimpleForest forest;
};

ForestOracleResult optimal_simple_forest(const TotalColoredGraph& g, Color color, i64 t);

// Exhaustively compares every monochromatic path against the canonical block
// matching under the reordering: no path of color c whose endpoints carry
// vertex color c may meet f([k]) in more vertices than the matching does, for
// any k. Paths with an off-color endpoint are the finite shadow of paths that
// stop dead and are excluded from the benchmark (see the companion test for a
// 5-vertex example that would otherwise beat it).
struct FaithfulnessReport {
    bool ok = true;
    Color color = Color::Red;  // color of the first violation, when !ok
    i64 k = 0;
    i64 path_coverage = 0;
    i64 matching_coverage = 0;
    std::vector<Vertex> witness_path;
};

FaithfulnessReport faithfulness_check(const GeometricColoring& c, i64 cap = 18,
                                      bool require_color_endpoints = true);

}  // namespace monopath
