#include "monopath/graphmodel.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "monopath/errors.hpp"

namespace monopath {

TotalColoredGraph::TotalColoredGraph(i64 n, Rational alpha) : n_(n), alpha_(alpha) {
    if (n < 1) throw PreconditionError("graph needs at least one vertex");
    if (n > kMaxVertices) {
        throw PreconditionError("graph size " + std::to_string(n) + " exceeds the dense-storage cap " +
                                std::to_string(kMaxVertices));
    }
    if (alpha.sign() < 0 || alpha >= Rational(1)) throw PreconditionError("alpha must lie in [0, 1)");
    vertex_colors_.assign(size_t(n), Color::Blue);
    edges_.assign(size_t(n) * size_t(n), 0);
}

void TotalColoredGraph::check_vertex(Vertex v) const {
    if (v < 1 || v > n_) {
        throw PreconditionError("vertex " + std::to_string(v) + " out of range [1, " + std::to_string(n_) + "]");
    }
}

void TotalColoredGraph::set_vertex_color(Vertex v, Color c) {
    check_vertex(v);
    vertex_colors_[size_t(v - 1)] = c;
}

Color TotalColoredGraph::vertex_color(Vertex v) const {
    check_vertex(v);
    return vertex_colors_[size_t(v - 1)];
}

void TotalColoredGraph::set_edge(Vertex u, Vertex v, Color c) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw PreconditionError("loop at vertex " + std::to_string(u));
    if (edges_[idx(u, v)] != 0) {
        throw PreconditionError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} set twice");
    }
    unsigned char code = (c == Color::Red) ? 1 : 2;
    edges_[idx(u, v)] = code;
    edges_[idx(v, u)] = code;
    ++edge_count_;
}

std::optional<Color> TotalColoredGraph::edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return std::nullopt;
    unsigned char code = edges_[idx(u, v)];
    if (code == 0) return std::nullopt;
    return code == 1 ? Color::Red : Color::Blue;
}

i64 TotalColoredGraph::degree(Vertex v) const {
    check_vertex(v);
    i64 d = 0;
    const unsigned char* row = edges_.data() + size_t(v - 1) * size_t(n_);
    for (i64 j = 0; j < n_; ++j) d += (row[j] != 0);
    return d;
}

std::vector<Vertex> TotalColoredGraph::vertices_of(Color c) const {
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= n_; ++v) {
        if (vertex_colors_[size_t(v - 1)] == c) out.push_back(v);
    }
    return out;
}

i64 TotalColoredGraph::count_of(Color c) const {
    i64 k = 0;
    for (auto col : vertex_colors_) k += (col == c);
    return k;
}

TotalColoredGraph::Report TotalColoredGraph::validate() const {
    Rational budget = alpha_ * Rational(n_);
    for (Vertex v = 1; v <= n_; ++v) {
        if (Rational(missing_at(v)) > budget) {
            return {false, "vertex " + std::to_string(v) + " misses " + std::to_string(missing_at(v)) +
                               " edges, above alpha*n = " + budget.str()};
        }
    }
    return {true, ""};
}

TotalColoredGraph complete_random_coloring(i64 n, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("n must be positive");
    TotalColoredGraph g(n, Rational(0));
    std::mt19937_64 rng(seed);
    for (Vertex v = 1; v <= n; ++v) {
        g.set_vertex_color(v, (rng() & 1u) ? Color::Red : Color::Blue);
    }
    for (Vertex u = 1; u <= n; ++u) {
        for (Vertex v = u + 1; v <= n; ++v) {
            g.set_edge(u, v, (rng() & 1u) ? Color::Red : Color::Blue);
        }
    }
    return g;
}

std::vector<Vertex> SimpleForest::vertices() const {
    std::vector<Vertex> out;
    out.reserve(edges.size() * 2 + isolated.size());
    for (auto [u, v] : edges) {
        out.push_back(u);
        out.push_back(v);
    }
    for (Vertex v : isolated) out.push_back(v);
    return out;
}

std::vector<Vertex> PathForest::vertices() const {
    std::vector<Vertex> out;
    for (const auto& p : paths) out.insert(out.end(), p.begin(), p.end());
    return out;
}

using Report = TotalColoredGraph::Report;

Report validate_simple_forest(const TotalColoredGraph& g, const SimpleForest& f) {
    std::unordered_set<Vertex> seen;
    auto claim = [&](Vertex v) -> std::string {
        if (v < 1 || v > g.size()) return "vertex " + std::to_string(v) + " out of range";
        if (!seen.insert(v).second) return "vertex " + std::to_string(v) + " used twice (degree above 1)";
        return "";
    };
    for (auto [u, v] : f.edges) {
        if (u == v) return {false, "loop at vertex " + std::to_string(u)};
        for (Vertex w : {u, v}) {
            if (auto msg = claim(w); !msg.empty()) return {false, msg};
        }
        auto col = g.edge(u, v);
        if (!col) return {false, "edge {" + std::to_string(u) + "," + std::to_string(v) + "} absent from the graph"};
        if (*col != f.color) {
            return {false, "edge {" + std::to_string(u) + "," + std::to_string(v) + "} is not " + color_name(f.color)};
        }
        if (g.vertex_color(u) != f.color && g.vertex_color(v) != f.color) {
            return {false, "edge {" + std::to_string(u) + "," + std::to_string(v) + "} has no " +
                               color_name(f.color) + "-colored endpoint"};
        }
    }
    for (Vertex v : f.isolated) {
        if (auto msg = claim(v); !msg.empty()) return {false, msg};
        if (g.vertex_color(v) != f.color) {
            return {false, "isolated vertex " + std::to_string(v) + " is not " + color_name(f.color)};
        }
    }
    return {true, ""};
}

Report validate_path_forest(const TotalColoredGraph& g, const PathForest& f) {
    std::unordered_set<Vertex> seen;
    for (const auto& path : f.paths) {
        if (path.empty()) return {false, "empty path component"};
        for (Vertex v : path) {
            if (v < 1 || v > g.size()) return {false, "vertex " + std::to_string(v) + " out of range"};
            if (!seen.insert(v).second) return {false, "not vertex-disjoint: vertex " + std::to_string(v) + " reused"};
        }
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            auto col = g.edge(path[i], path[i + 1]);
            if (!col) {
                return {false, "edge {" + std::to_string(path[i]) + "," + std::to_string(path[i + 1]) +
                                   "} absent from the graph"};
            }
            if (*col != f.color) {
                return {false, "edge {" + std::to_string(path[i]) + "," + std::to_string(path[i + 1]) +
                                   "} is not " + color_name(f.color)};
            }
        }
        // leaves of an edge-path and singleton vertices must carry the forest color
        if (path.size() == 1) {
            if (g.vertex_color(path[0]) != f.color) {
                return {false, "isolated vertex " + std::to_string(path[0]) + " is not " + color_name(f.color)};
            }
        } else {
            for (Vertex leaf : {path.front(), path.back()}) {
                if (g.vertex_color(leaf) != f.color) {
                    return {false, "leaf " + std::to_string(leaf) + " is not " + color_name(f.color)};
                }
            }
        }
    }
    return {true, ""};
}

Rational density_at(const std::vector<Vertex>& members, i64 t) {
    if (t < 1) throw PreconditionError("density horizon must be positive");
    i64 inside = 0;
    for (Vertex v : members) inside += (v >= 1 && v <= t);
    return Rational(inside, t);
}

void write_coloring_file(std::ostream& out, const TotalColoredGraph& g) {
    out << "n " << g.size() << " alpha " << g.alpha().num << "/" << g.alpha().den << "\n";
    std::string colors;
    colors.reserve(size_t(g.size()));
    for (Vertex v = 1; v <= g.size(); ++v) colors.push_back(color_char(g.vertex_color(v)));
    out << colors << "\n";
    for (Vertex u = 1; u <= g.size(); ++u) {
        for (Vertex v = u + 1; v <= g.size(); ++v) {
            if (auto c = g.edge(u, v)) out << u << " " << v << " " << color_char(*c) << "\n";
        }
    }
}

void write_coloring_file(const std::string& path, const TotalColoredGraph& g) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot open " + path + " for writing");
    write_coloring_file(out, g);
}

TotalColoredGraph read_coloring_file(std::istream& in) {
    std::string tag_n, tag_alpha, alpha_text;
    i64 n = 0;
    if (!(in >> tag_n >> n >> tag_alpha >> alpha_text) || tag_n != "n" || tag_alpha != "alpha") {
        throw PreconditionError("malformed coloring header");
    }
    Rational alpha = Rational::parse(alpha_text);
    std::string colors;
    if (!(in >> colors)) throw PreconditionError("missing vertex color line");
    if (i64(colors.size()) != n) {
        throw PreconditionError("vertex color line has length " + std::to_string(colors.size()) +
                                ", expected " + std::to_string(n));
    }
    TotalColoredGraph g(n, alpha);
    for (Vertex v = 1; v <= n; ++v) {
        char c = colors[size_t(v - 1)];
        if (c != 'R' && c != 'B') throw PreconditionError(std::string("bad vertex color '") + c + "'");
        g.set_vertex_color(v, c == 'R' ? Color::Red : Color::Blue);
    }
    Vertex u, v;
    std::string col;
    while (in >> u >> v >> col) {
        if (u >= v) throw PreconditionError("edge endpoints must satisfy u < v");
        if (col != "R" && col != "B") throw PreconditionError("bad edge color '" + col + "'");
        g.set_edge(u, v, col == "R" ? Color::Red : Color::Blue);  // duplicates rejected here
    }
    if (!in.eof() && in.fail()) throw PreconditionError("malformed edge line");
    return g;
}

TotalColoredGraph read_coloring_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open " + path);
    return read_coloring_file(in);
}

}  // namespace monopath
