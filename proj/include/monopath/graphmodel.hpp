#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monopath/numeric.hpp"

namespace monopath {

using Vertex = i64;  // vertices are 1..n in the natural order

enum class Color : unsigned char { Red, Blue };

inline Color complement(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }
inline char color_char(Color c) { return c == Color::Red ? 'R' : 'B'; }
inline const char* color_name(Color c) { return c == Color::Red ? "red" : "blue"; }

// Ordered graph on [n] with a 2-coloring of the vertices and of the present
// edges. Absent edges are genuinely absent, never a third color; the per-vertex
// number of absent edges is bounded by alpha*n. Immutable once populated.
class TotalColoredGraph {
public:
    // Dense edge storage keeps lookups O(1); this caps the desk scale.
    static constexpr i64 kMaxVertices = 6000;

    TotalColoredGraph(i64 n, Rational alpha = Rational(0));

    i64 size() const { return n_; }
    const Rational& alpha() const { return alpha_; }

    void set_vertex_color(Vertex v, Color c);
    Color vertex_color(Vertex v) const;

    void set_edge(Vertex u, Vertex v, Color c);  // rejects loops, range errors, duplicates
    std::optional<Color> edge(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const { return edge(u, v).has_value(); }

    i64 degree(Vertex v) const;
    i64 missing_at(Vertex v) const { return n_ - 1 - degree(v); }
    i64 edge_count() const { return edge_count_; }

    std::vector<Vertex> vertices_of(Color c) const;
    i64 count_of(Color c) const;

    // Checks the structural invariants: per-vertex missing edges at most
    // alpha*n (so alpha = 0 forces a complete graph).
    struct Report {
        bool ok = true;
        std::string violation;
    };
    Report validate() const;

private:
    void check_vertex(Vertex v) const;
    size_t idx(Vertex u, Vertex v) const { return size_t(u - 1) * size_t(n_) + size_t(v - 1); }

    i64 n_;
    Rational alpha_;
    i64 edge_count_ = 0;
    std::vector<Color> vertex_colors_;
    std::vector<unsigned char> edges_;  // 0 absent, 1 red, 2 blue
};

// Complete graph with uniformly random vertex and edge colors, deterministic
// per seed.
TotalColoredGraph complete_random_coloring(i64 n, std::uint64_t seed);

// Matching plus isolated vertices, all carrying one color; every edge must
// additionally have at least one endpoint of that vertex color.
struct SimpleForest {
    Color color = Color::Red;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<Vertex> isolated;

    std::vector<Vertex> vertices() const;
    i64 vertex_count() const { return i64(edges.size()) * 2 + i64(isolated.size()); }
};

// Vertex-disjoint paths (singletons allowed) of one edge color whose leaves and
// isolated vertices carry that color as vertex color.
struct PathForest {
    Color color = Color::Red;
    std::vector<std::vector<Vertex>> paths;

    std::vector<Vertex> vertices() const;
};

TotalColoredGraph::Report validate_simple_forest(const TotalColoredGraph& g, const SimpleForest& f);
TotalColoredGraph::Report validate_path_forest(const TotalColoredGraph& g, const PathForest& f);

// |members ∩ [t]| / t as an exact rational; members need not be sorted.
Rational density_at(const std::vector<Vertex>& members, i64 t);

// Text format: line 1 "n <n> alpha <num>/<den>", line 2 the vertex colors as a
// string of R/B, then one line "u v R|B" per present edge with u < v.
void write_coloring_file(std::ostream& out, const TotalColoredGraph& g);
void write_coloring_file(const std::string& path, const TotalColoredGraph& g);
TotalColoredGraph read_coloring_file(std::istream& in);
TotalColoredGraph read_coloring_file(const std::string& path);

}  // namespace monopath
