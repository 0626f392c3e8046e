#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "monopath/graphmodel.hpp"
#include "monopath/sequences.hpp"

namespace monopath {

// Spanning bipartite subgraph between the red and blue vertex classes; edges
// inside a class are dropped, surviving edges keep their colors. No assumption
// is made about what the dropped edges looked like.
struct BipartiteReduction {
    std::vector<Vertex> red_side;   // ascending
    std::vector<Vertex> blue_side;  // ascending
    std::vector<std::vector<int>> red_edges;   // red-side index -> blue-side indices, red edges
    std::vector<std::vector<int>> blue_edges;  // same for blue edges

    static BipartiteReduction from(const TotalColoredGraph& g);

    i64 reds() const { return i64(red_side.size()); }
    i64 blues() const { return i64(blue_side.size()); }
};

// Blue-degrees of the red vertices, sorted ascending with ties broken by
// vertex index; witness[i] is the vertex realizing values[i].
struct DegreeSequence {
    std::vector<i64> values;
    std::vector<Vertex> witness;

    OscillationSequence as_sequence() const { return OscillationSequence{values}; }
};

DegreeSequence degree_sequence(const TotalColoredGraph& g);

// Maximum matching together with a minimum vertex cover of the same size.
struct KonigCertificate {
    Color color = Color::Red;
    std::vector<std::pair<Vertex, Vertex>> matching;  // (red vertex, blue vertex)
    std::vector<Vertex> cover;

    // cover touches every edge of the color and |matching| == |cover|
    TotalColoredGraph::Report check(const BipartiteReduction& b,
                                    const std::vector<char>* blue_allowed = nullptr) const;
};

// König certificate for the chosen color's edges of the reduction; blue_allowed
// (indexed by blue-side position) restricts the blue side when present.
KonigCertificate konig(const BipartiteReduction& b, Color color,
                       const std::vector<char>* blue_allowed = nullptr);

// Precomputed per-graph state shared by repeated extractions.
struct ExtractContext {
    BipartiteReduction reduction;
    DegreeSequence degrees;

    static ExtractContext from(const TotalColoredGraph& g);
};

// Blue simple forest covering all but at most t vertices of R' ∪ B, built by a
// greedy matching over R' in increasing blue-degree order (each vertex takes
// its lowest-indexed unused blue neighbor). Requires the restricted degree
// sequence to satisfy a_j > j - t for 1 <= j <= |R'| - 1.
SimpleForest greedy_blue_forest(const TotalColoredGraph& g, const ExtractContext& ctx,
                                const std::vector<Vertex>& r_prime, i64 t);

// Red simple forest covering all but at most t + alpha*n vertices of R ∪ B',
// via a König certificate on the red edges into B'. Requires the full degree
// sequence to satisfy a_i < i + t for 1 <= i <= |B'| - t.
SimpleForest konig_red_forest(const TotalColoredGraph& g, const ExtractContext& ctx,
                              const std::vector<Vertex>& b_prime, i64 t);

struct ExtractedForest {
    SimpleForest forest;
    i64 horizon = 0;      // min(rise + dip + t, n)
    bool clipped = false; // horizon hit n before rise + dip + t
    Rational density;     // density_at(V(F), horizon)
};

// Dispatches on the window [rise + dip + t]: the blue branch when
// dip >= |R ∩ [window]|, the red branch otherwise. rise/dip must equal
// first_rise/first_dip of the degree sequence at t.
ExtractedForest forest_at_threshold(const TotalColoredGraph& g, const ExtractContext& ctx, i64 t,
                                    i64 rise, i64 dip);
ExtractedForest forest_at_threshold(const TotalColoredGraph& g, i64 t, i64 rise, i64 dip);

// Dichotomy: either a monochromatic simple forest with
// density_at(V(F), n) >= 7/8 - alpha, or indices witnessing oscillation at
// least n/8 in the degree sequence. When a minimum red cover contains the
// whole red class the rise derivation has nothing to stand on; if the witness
// is also missing the call reports the instance as inconclusive
// (PreconditionError) rather than certifying either branch.
struct DichotomyResult {
    bool has_forest = false;
    SimpleForest forest;
    Rational density;         // at horizon n, when has_forest
    i64 rise_at = 0;          // witness indices otherwise
    i64 dip_at = 0;
    i64 witnessed = 0;        // min(a_i - i, j - a_j) at the witnesses
};

DichotomyResult dense_forest_or_oscillation(const TotalColoredGraph& g);
DichotomyResult dense_forest_or_oscillation(const TotalColoredGraph& g, const ExtractContext& ctx);

struct PipelineResult {
    enum class Branch { DenseForest, Oscillation };
    Branch branch = Branch::DenseForest;
    Rational t;            // in [k/8, k*N]
    i64 t_int = 0;         // ceil(t), the integer threshold actually extracted at
    SimpleForest forest;
    i64 horizon = 0;
    Rational density;      // exact, at the horizon
    bool meets_target = false;  // density >= (12 + sqrt 8)/17 - gamma
};

// Chains the dichotomy, the oscillation threshold search (with horizon scale
// N = n/k), and the forest extraction. gamma is the full density slack; the
// threshold search runs at gamma/4. k must divide n. Stage failures carry a
// stage label and are PreconditionErrors; certified-bound failures are alarms.
PipelineResult simple_forest_pipeline(const TotalColoredGraph& g, i64 k, const Rational& gamma);

// Certificate format: "color R|B", then "edge u v" / "isolated v" lines, then
// "horizon h density num/den".
struct ForestCertificate {
    SimpleForest forest;
    i64 horizon = 0;
    Rational density;
};

void write_forest_certificate(std::ostream& out, const ForestCertificate& c);
void write_forest_certificate(const std::string& path, const ForestCertificate& c);
ForestCertificate read_forest_certificate(std::istream& in);
ForestCertificate read_forest_certificate(const std::string& path);

// Re-validates a certificate against a graph: forest invariants plus the
// recorded density at the recorded horizon.
TotalColoredGraph::Report check_forest_certificate(const TotalColoredGraph& g, const ForestCertificate& c);

}  // namespace monopath
