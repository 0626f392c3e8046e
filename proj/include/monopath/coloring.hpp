#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "monopath/graphmodel.hpp"
#include "monopath/quadratic.hpp"

namespace monopath {

// Partition of [n] into consecutive blocks A_0, A_1, ... with |A_i| = floor(q^i),
// vertices of odd blocks red, even blocks blue, and an edge colored by the
// parity of the smaller block index (odd -> red). Prefixes always end at a
// block boundary.
class GeometricColoring {
public:
    // Smallest whole-number-of-blocks prefix with at least min_vertices vertices.
    static GeometricColoring build(const QuadraticValue& q, i64 min_vertices);
    // Reconstructs the partition from explicit block sizes (as recovered from a
    // coloring file); growth rate is left unset.
    static GeometricColoring from_block_sizes(const std::vector<i64>& sizes);

    const QuadraticValue& growth_rate() const { return q_; }
    i64 size() const { return block_starts_.back() - 1; }
    i64 block_count() const { return i64(block_starts_.size()) - 1; }
    i64 block_size(i64 i) const { return block_starts_[size_t(i + 1)] - block_starts_[size_t(i)]; }
    Vertex block_begin(i64 i) const { return block_starts_[size_t(i)]; }
    i64 block_of(Vertex v) const;

    Color vertex_color(Vertex v) const { return (block_of(v) % 2 == 1) ? Color::Red : Color::Blue; }
    Color edge_color(Vertex u, Vertex v) const;

    i64 count_of(Color c) const;                 // vertices of that color in the prefix
    i64 color_rank(Vertex v) const;              // 1-based rank of v among its color class

private:
    QuadraticValue q_;
    std::vector<Vertex> block_starts_;           // block i occupies [starts[i], starts[i+1] - 1]
    std::vector<i64> reds_below_block_;          // red vertices in blocks < i
    std::vector<i64> blues_below_block_;

    void build_prefix_counts();
};

// Matching between consecutive blocks: the red matching pairs each odd block
// with the leading vertices of the next block, the blue matching each even
// block with the leading vertices of the next.
struct BlockMatching {
    Color color = Color::Red;
    std::vector<std::pair<Vertex, Vertex>> pairs;

    std::vector<Vertex> vertices() const;
};

struct ColoringMatchings {
    BlockMatching red;
    BlockMatching blue;
};

ColoringMatchings canonical_matchings(const GeometricColoring& c);

// Vertex set of the full (un-truncated) block matching restricted to the
// prefix, as 1-indexed coverage flags: every vertex of the matching's own
// color class is saturated, plus the leading vertices of each next block. The
// finite pair list above drops pairs whose partner block lies beyond the
// prefix; this shadow keeps their endpoints covered.
std::vector<char> matching_shadow(const GeometricColoring& c, Color color);

// t-th red vertex not covered by the blue matching / t-th blue vertex not
// covered by the red matching. Throws when fewer than t such vertices exist.
Vertex nth_exposed_red(const GeometricColoring& c, i64 t);
Vertex nth_exposed_blue(const GeometricColoring& c, i64 t);
i64 exposed_red_count(const GeometricColoring& c);
i64 exposed_blue_count(const GeometricColoring& c);

// Rank of the t-th exposed red vertex among the red vertices (resp. blue),
// evaluated from the closed-form block sums.
i64 red_star_rank(const GeometricColoring& c, i64 t);
i64 blue_star_rank(const GeometricColoring& c, i64 t);

// Bijection [n] -> [n] interleaving the color classes: blues in order up to the
// first exposed blue, then reds up to the first exposed red, and so on. Once
// the next exposed vertex of the current color falls outside the prefix, the
// remaining vertices of that color are emitted, then the rest.
struct Reordering {
    std::vector<Vertex> fwd;                 // fwd[k-1] = f(k)
    std::vector<Vertex> inv;                 // inv[v-1] = f^{-1}(v)
    std::vector<i64> red_star_positions;     // position of the t-th exposed red in f-order
    std::vector<i64> blue_star_positions;

    Vertex operator()(i64 k) const { return fwd[size_t(k - 1)]; }
    i64 position_of(Vertex v) const { return inv[size_t(v - 1)]; }
};

Reordering build_reordering(const GeometricColoring& c);

struct ProfileBreakpoint {
    i64 t = 0;
    i64 k = 0;            // red_star_rank(t) + blue_star_rank(t) - 1
    Rational envelope;    // 1 - (t-1)/k
    Rational value;       // measured density at k
};

struct DensityProfile {
    std::vector<Rational> values;  // values[k-1] = |V(M) ∩ f([k])| / k
    i64 peak_k = 0;
    Rational peak;                 // maximum over all k
    std::vector<ProfileBreakpoint> breakpoints;
};

DensityProfile density_profile(const GeometricColoring& c, const BlockMatching& m, const Reordering& f);

// (q^2 + 2q - 1) / (q^2 + 3q - 2), exact; requires q > 1.
QuadraticValue path_density_bound(const QuadraticValue& q);
// (12 + sqrt(8)) / 17, the bound at the silver ratio.
QuadraticValue optimal_upper_density();
// Ternary search for the minimizer of the bound on (lo, hi).
double minimize_density_bound(double lo = 1.000000001, double hi = 4.0, int iterations = 400);

struct SweepRow {
    std::string q_label;
    QuadraticValue q;
    QuadraticValue bound;   // closed form
    Rational empirical;     // peak of the red-matching density profile
};

std::vector<SweepRow> sweep_growth_rates(const std::vector<std::pair<std::string, QuadraticValue>>& qs,
                                         i64 min_vertices);

// Materializes the prefix as a complete totally colored graph (alpha = 0).
TotalColoredGraph to_total_coloring(const GeometricColoring& c);
// Recovers the block structure of a geometric prefix from its vertex colors and
// checks every present edge against the parity rule.
GeometricColoring blocks_from_total_coloring(const TotalColoredGraph& g);

// CSV with header k,density_num,density_den and one row per breakpoint.
void write_profile_csv(std::ostream& out, const DensityProfile& p);
void write_profile_csv(const std::string& path, const DensityProfile& p);
std::vector<ProfileBreakpoint> read_profile_csv(std::istream& in);
std::vector<ProfileBreakpoint> read_profile_csv(const std::string& path);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

struct SweepCsvRow {
    std::string q_label;
    double bound = 0;
    Rational empirical;
};

std::vector<SweepCsvRow> read_sweep_csv(std::istream& in);
std::vector<SweepCsvRow> read_sweep_csv(const std::string& path);

// q-spec grammar: "silver" (1 + sqrt 2), an integer, or a rational "a/b".
QuadraticValue parse_growth_rate(const std::string& text);

}  // namespace monopath
