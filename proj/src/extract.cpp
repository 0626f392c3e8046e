#include "monopath/extract.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "monopath/coloring.hpp"
#include "monopath/errors.hpp"
#include "monopath/matching.hpp"

namespace monopath {

BipartiteReduction BipartiteReduction::from(const TotalColoredGraph& g) {
    BipartiteReduction b;
    b.red_side = g.vertices_of(Color::Red);
    b.blue_side = g.vertices_of(Color::Blue);
    b.red_edges.assign(b.red_side.size(), {});
    b.blue_edges.assign(b.red_side.size(), {});
    std::vector<int> blue_pos(size_t(g.size()) + 1, -1);
    for (size_t j = 0; j < b.blue_side.size(); ++j) blue_pos[size_t(b.blue_side[j])] = int(j);
    for (size_t i = 0; i < b.red_side.size(); ++i) {
        Vertex r = b.red_side[i];
        for (Vertex v = 1; v <= g.size(); ++v) {
            int j = blue_pos[size_t(v)];
            if (j < 0) continue;
            auto c = g.edge(r, v);
            if (!c) continue;
            (*c == Color::Red ? b.red_edges : b.blue_edges)[i].push_back(j);
        }
    }
    return b;
}

DegreeSequence degree_sequence(const TotalColoredGraph& g) {
    BipartiteReduction b = BipartiteReduction::from(g);
    if (b.red_side.empty()) throw PreconditionError("no red vertices: the degree sequence is over the red class");
    DegreeSequence d;
    std::vector<std::pair<i64, Vertex>> rows;
    rows.reserve(b.red_side.size());
    for (size_t i = 0; i < b.red_side.size(); ++i) {
        rows.emplace_back(i64(b.blue_edges[i].size()), b.red_side[i]);
    }
    std::sort(rows.begin(), rows.end());
    d.values.reserve(rows.size());
    d.witness.reserve(rows.size());
    for (auto& [val, v] : rows) {
        d.values.push_back(val);
        d.witness.push_back(v);
    }
    return d;
}

KonigCertificate konig(const BipartiteReduction& b, Color color, const std::vector<char>* blue_allowed) {
    const auto& edges = (color == Color::Red) ? b.red_edges : b.blue_edges;
    BipartiteMatcher m(int(b.red_side.size()), int(b.blue_side.size()));
    for (size_t i = 0; i < edges.size(); ++i) {
        for (int j : edges[i]) {
            if (blue_allowed && !(*blue_allowed)[size_t(j)]) continue;
            m.add_edge(int(i), j);
        }
    }
    m.solve();
    KonigCertificate cert;
    cert.color = color;
    for (size_t i = 0; i < m.match_l.size(); ++i) {
        if (m.match_l[i] >= 0) cert.matching.emplace_back(b.red_side[i], b.blue_side[size_t(m.match_l[i])]);
    }
    auto [left, right] = m.min_vertex_cover();
    for (int i : left) cert.cover.push_back(b.red_side[size_t(i)]);
    for (int j : right) cert.cover.push_back(b.blue_side[size_t(j)]);
    return cert;
}

TotalColoredGraph::Report KonigCertificate::check(const BipartiteReduction& b,
                                                  const std::vector<char>* blue_allowed) const {
    if (matching.size() != cover.size()) {
        return {false, "matching size " + std::to_string(matching.size()) + " differs from cover size " +
                           std::to_string(cover.size())};
    }
    std::unordered_map<Vertex, int> used;
    for (auto [u, v] : matching) {
        if (++used[u] > 1) return {false, "vertex " + std::to_string(u) + " matched twice"};
        if (++used[v] > 1) return {false, "vertex " + std::to_string(v) + " matched twice"};
    }
    i64 max_id = 0;
    for (Vertex v : b.red_side) max_id = std::max(max_id, v);
    for (Vertex v : b.blue_side) max_id = std::max(max_id, v);
    std::vector<char> in_cover(size_t(max_id) + 1, 0);
    for (Vertex v : cover) in_cover[size_t(v)] = 1;
    const auto& edges = (color == Color::Red) ? b.red_edges : b.blue_edges;
    for (size_t i = 0; i < edges.size(); ++i) {
        for (int j : edges[i]) {
            if (blue_allowed && !(*blue_allowed)[size_t(j)]) continue;
            if (!in_cover[size_t(b.red_side[i])] && !in_cover[size_t(b.blue_side[size_t(j)])]) {
                return {false, "edge {" + std::to_string(b.red_side[i]) + "," +
                                   std::to_string(b.blue_side[size_t(j)]) + "} uncovered"};
            }
        }
    }
    return {true, ""};
}

ExtractContext ExtractContext::from(const TotalColoredGraph& g) {
    ExtractContext ctx{BipartiteReduction::from(g), {}};
    if (!ctx.reduction.red_side.empty()) {
        std::vector<std::pair<i64, Vertex>> rows;
        rows.reserve(ctx.reduction.red_side.size());
        for (size_t i = 0; i < ctx.reduction.red_side.size(); ++i) {
            rows.emplace_back(i64(ctx.reduction.blue_edges[i].size()), ctx.reduction.red_side[i]);
        }
        std::sort(rows.begin(), rows.end());
        for (auto& [val, v] : rows) {
            ctx.degrees.values.push_back(val);
            ctx.degrees.witness.push_back(v);
        }
    }
    return ctx;
}

SimpleForest greedy_blue_forest(const TotalColoredGraph& g, const ExtractContext& ctx,
                                const std::vector<Vertex>& r_prime, i64 t) {
    if (t < 1) throw PreconditionError("t must be positive");
    const auto& b = ctx.reduction;
    std::unordered_map<Vertex, size_t> red_pos;
    for (size_t i = 0; i < b.red_side.size(); ++i) red_pos[b.red_side[i]] = i;

    // order R' by blue-degree, ties by vertex index
    std::vector<std::pair<i64, Vertex>> ordered;
    ordered.reserve(r_prime.size());
    for (Vertex v : r_prime) {
        if (v < 1 || v > g.size()) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
        auto it = red_pos.find(v);
        if (it == red_pos.end()) throw PreconditionError("vertex " + std::to_string(v) + " is not red");
        ordered.emplace_back(i64(b.blue_edges[it->second].size()), v);
    }
    std::sort(ordered.begin(), ordered.end());

    i64 m = i64(ordered.size());
    for (i64 j = 1; j <= m - 1; ++j) {
        if (ordered[size_t(j - 1)].first <= j - t) {
            throw PreconditionError("degree hypothesis fails at index " + std::to_string(j) +
                                    ": restricted value " + std::to_string(ordered[size_t(j - 1)].first) +
                                    " is not above " + std::to_string(j - t));
        }
    }

    SimpleForest f;
    f.color = Color::Blue;
    std::vector<char> blue_used(b.blue_side.size(), 0);
    for (i64 j = std::max<i64>(t, 1); j <= m - 1; ++j) {
        Vertex v = ordered[size_t(j - 1)].second;
        const auto& nbrs = b.blue_edges[red_pos[v]];  // ascending by construction
        int picked = -1;
        for (int cand : nbrs) {
            if (!blue_used[size_t(cand)]) {
                picked = cand;
                break;
            }
        }
        if (picked < 0) {
            throw InvariantViolation("greedy matching stuck at ordered index " + std::to_string(j));
        }
        blue_used[size_t(picked)] = 1;
        f.edges.emplace_back(v, b.blue_side[size_t(picked)]);
    }
    for (size_t j = 0; j < b.blue_side.size(); ++j) {
        if (!blue_used[j]) f.isolated.push_back(b.blue_side[j]);
    }
    return f;
}

SimpleForest konig_red_forest(const TotalColoredGraph& g, const ExtractContext& ctx,
                              const std::vector<Vertex>& b_prime, i64 t) {
    if (t < 1) throw PreconditionError("t must be positive");
    const auto& b = ctx.reduction;
    const auto& a = ctx.degrees.values;
    i64 limit = i64(b_prime.size()) - t;
    for (i64 i = 1; i <= limit && i <= i64(a.size()); ++i) {
        if (a[size_t(i - 1)] >= i + t) {
            throw PreconditionError("degree hypothesis fails at index " + std::to_string(i) + ": value " +
                                    std::to_string(a[size_t(i - 1)]) + " is not below " + std::to_string(i + t));
        }
    }

    std::vector<char> allowed(b.blue_side.size(), 0);
    for (Vertex v : b_prime) {
        auto it = std::lower_bound(b.blue_side.begin(), b.blue_side.end(), v);
        if (it == b.blue_side.end() || *it != v) {
            throw PreconditionError("vertex " + std::to_string(v) + " is not blue");
        }
        allowed[size_t(it - b.blue_side.begin())] = 1;
    }
    KonigCertificate cert = konig(b, Color::Red, &allowed);

    Rational needed = Rational(i64(b_prime.size()) - t) - g.alpha() * Rational(g.size());
    if (Rational(i64(cert.matching.size())) < needed) {
        throw InvariantViolation("red matching covers " + std::to_string(cert.matching.size()) +
                                 " blue vertices, below the certified " + needed.str());
    }

    SimpleForest f;
    f.color = Color::Red;
    f.edges = cert.matching;
    std::vector<char> red_matched(size_t(g.size()) + 1, 0);
    for (auto [u, v] : cert.matching) red_matched[size_t(u)] = 1;
    for (Vertex v : b.red_side) {
        if (!red_matched[size_t(v)]) f.isolated.push_back(v);
    }
    return f;
}

ExtractedForest forest_at_threshold(const TotalColoredGraph& g, const ExtractContext& ctx, i64 t,
                                    i64 rise, i64 dip) {
    if (t < 1) throw PreconditionError("t must be positive");
    OscillationSequence s = ctx.degrees.as_sequence();
    auto info = oscillation(s);
    if (t > info.amount) {
        throw PreconditionError("t = " + std::to_string(t) + " exceeds the degree-sequence oscillation " +
                                std::to_string(info.amount));
    }
    if (rise != first_rise(s, Rational(t)) || dip != first_dip(s, Rational(t))) {
        throw PreconditionError("rise/dip do not match the degree sequence at t = " + std::to_string(t));
    }
    i64 ell = rise + dip;
    i64 window = ell + t;
    ExtractedForest out;
    out.clipped = window > g.size();
    out.horizon = std::min(window, g.size());

    std::vector<Vertex> r_prime, b_prime;
    for (Vertex v = 1; v <= out.horizon; ++v) {
        (g.vertex_color(v) == Color::Red ? r_prime : b_prime).push_back(v);
    }
    if (dip >= i64(r_prime.size())) {
        out.forest = greedy_blue_forest(g, ctx, r_prime, t);
    } else if (rise > i64(b_prime.size()) - t) {
        out.forest = konig_red_forest(g, ctx, b_prime, t);
    } else {
        throw InvariantViolation("window dichotomy failed: dip " + std::to_string(dip) + " < |R'| = " +
                                 std::to_string(r_prime.size()) + " and rise " + std::to_string(rise) +
                                 " <= |B'| - t");
    }
    out.density = density_at(out.forest.vertices(), out.horizon);
    if (!out.clipped) {
        Rational bound = (Rational(ell) - g.alpha() * Rational(g.size())) / Rational(window);
        if (out.density < bound) {
            throw InvariantViolation("extracted forest density " + out.density.str() +
                                     " misses the certified bound " + bound.str());
        }
    }
    return out;
}

ExtractedForest forest_at_threshold(const TotalColoredGraph& g, i64 t, i64 rise, i64 dip) {
    auto ctx = ExtractContext::from(g);
    return forest_at_threshold(g, ctx, t, rise, dip);
}

DichotomyResult dense_forest_or_oscillation(const TotalColoredGraph& g, const ExtractContext& ctx) {
    if (auto rep = g.validate(); !rep.ok) {
        throw PreconditionError("graph violates its missing-edge budget: " + rep.violation);
    }
    const auto& b = ctx.reduction;
    i64 n = g.size();
    Rational n8 = Rational(n, 8);
    DichotomyResult out;

    // red cover large -> red matching covers almost every blue vertex
    KonigCertificate red = konig(b, Color::Red);
    if (Rational(i64(red.cover.size())) >= Rational(b.blues()) - (n8 + g.alpha() * Rational(n))) {
        out.has_forest = true;
        out.forest.color = Color::Red;
        out.forest.edges = red.matching;
        std::vector<char> matched(size_t(n) + 1, 0);
        for (auto [u, v] : red.matching) matched[size_t(u)] = 1;
        for (Vertex v : b.red_side) {
            if (!matched[size_t(v)]) out.forest.isolated.push_back(v);
        }
        out.density = density_at(out.forest.vertices(), n);
        return out;
    }

    // blue cover large -> blue matching covers almost every red vertex
    KonigCertificate blue = konig(b, Color::Blue);
    if (Rational(i64(blue.cover.size())) > Rational(b.reds()) - n8) {
        out.has_forest = true;
        out.forest.color = Color::Blue;
        out.forest.edges.reserve(blue.matching.size());
        for (auto [u, v] : blue.matching) out.forest.edges.emplace_back(v, u);  // blue endpoint first
        std::vector<char> matched(size_t(n) + 1, 0);
        for (auto [u, v] : blue.matching) matched[size_t(v)] = 1;
        for (Vertex v : b.blue_side) {
            if (!matched[size_t(v)]) out.forest.isolated.push_back(v);
        }
        out.density = density_at(out.forest.vertices(), n);
        return out;
    }

    // both covers small: the degree sequence should oscillate by at least n/8
    if (ctx.degrees.values.empty()) throw InvariantViolation("small covers with an empty degree sequence");
    OscillationSequence s = ctx.degrees.as_sequence();
    auto info = oscillation(s);
    i64 rise = s.at(info.rise_at) - info.rise_at;
    i64 dip = info.dip_at - s.at(info.dip_at);
    if (Rational(dip) < n8) {
        // the dip follows from the small blue cover unconditionally
        throw InvariantViolation("blue cover is small but the degree sequence never dips by n/8");
    }
    if (Rational(rise) < n8) {
        // the rise derivation needs a red vertex outside the red cover; when a
        // minimum cover swallows the whole red class (it can at this scale,
        // e.g. geometric prefixes ending in an even block) the case analysis
        // is genuinely inconclusive
        i64 red_in_cover = 0;
        for (Vertex v : red.cover) red_in_cover += (g.vertex_color(v) == Color::Red);
        if (red_in_cover >= b.reds()) {
            throw PreconditionError(
                "dichotomy inconclusive: the minimum red cover is the entire red class and the "
                "degree sequence rises only " + std::to_string(rise) + " above the diagonal (< n/8)");
        }
        throw InvariantViolation("red cover leaves a red vertex exposed but the rise stays below n/8");
    }
    out.has_forest = false;
    out.rise_at = info.rise_at;
    out.dip_at = info.dip_at;
    out.witnessed = std::min(rise, dip);
    return out;
}

DichotomyResult dense_forest_or_oscillation(const TotalColoredGraph& g) {
    auto ctx = ExtractContext::from(g);
    return dense_forest_or_oscillation(g, ctx);
}

PipelineResult simple_forest_pipeline(const TotalColoredGraph& g, i64 k, const Rational& gamma) {
    if (k < 1) throw PreconditionError("pipeline: k must be positive");
    if (gamma.sign() <= 0) throw PreconditionError("pipeline: gamma must be positive");
    i64 n = g.size();
    if (n % k != 0) {
        throw PreconditionError("pipeline: k = " + std::to_string(k) + " does not divide n = " + std::to_string(n));
    }
    i64 scale = n / k;
    Rational gamma4 = gamma * Rational(1, 4);
    if (g.alpha() > gamma4 / Rational(8 * scale)) {
        throw PreconditionError("pipeline: alpha " + g.alpha().str() + " exceeds gamma/(32*N) = " +
                                (gamma4 / Rational(8 * scale)).str());
    }

    auto ctx = ExtractContext::from(g);
    PipelineResult out;
    QuadraticValue target = optimal_upper_density() - QuadraticValue(gamma);

    DichotomyResult first = dense_forest_or_oscillation(g, ctx);
    if (first.has_forest) {
        Rational floor_density = Rational(7, 8) - g.alpha();
        if (first.density < floor_density) {
            throw InvariantViolation("pipeline: dense-forest branch density " + first.density.str() +
                                     " below 7/8 - alpha");
        }
        out.branch = PipelineResult::Branch::DenseForest;
        out.t = Rational(n);
        out.t_int = n;
        out.forest = std::move(first.forest);
        out.horizon = n;
        out.density = first.density;
        out.meets_target = QuadraticValue(out.density) >= target;
        return out;
    }

    OscillationSequence s = ctx.degrees.as_sequence();
    OscillationThreshold th;
    try {
        th = find_oscillation_threshold(s, Rational(k, 8), gamma4, scale);
    } catch (const PreconditionError& e) {
        throw PreconditionError(std::string("pipeline threshold-search: ") + e.what());
    }

    i64 t_int = th.t.ceil();
    if (first_rise(s, Rational(t_int)) != th.rise || first_dip(s, Rational(t_int)) != th.dip) {
        throw InvariantViolation("pipeline: integer threshold shifted the rise/dip indices");
    }
    ExtractedForest ext = forest_at_threshold(g, ctx, t_int, th.rise, th.dip);
    out.branch = PipelineResult::Branch::Oscillation;
    out.t = th.t;
    out.t_int = t_int;
    out.forest = std::move(ext.forest);
    out.horizon = ext.horizon;
    out.density = ext.density;
    out.meets_target = QuadraticValue(out.density) >= target;
    return out;
}

void write_forest_certificate(std::ostream& out, const ForestCertificate& c) {
    out << "color " << color_char(c.forest.color) << "\n";
    for (auto [u, v] : c.forest.edges) out << "edge " << u << " " << v << "\n";
    for (Vertex v : c.forest.isolated) out << "isolated " << v << "\n";
    out << "horizon " << c.horizon << " density " << c.density.num << "/" << c.density.den << "\n";
}

void write_forest_certificate(const std::string& path, const ForestCertificate& c) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot open " + path + " for writing");
    write_forest_certificate(out, c);
}

ForestCertificate read_forest_certificate(std::istream& in) {
    ForestCertificate c;
    std::string tag;
    if (!(in >> tag) || tag != "color") throw PreconditionError("certificate must start with a color line");
    std::string col;
    in >> col;
    if (col != "R" && col != "B") throw PreconditionError("bad certificate color: " + col);
    c.forest.color = (col == "R") ? Color::Red : Color::Blue;
    bool closed = false;
    while (in >> tag) {
        if (tag == "edge") {
            Vertex u, v;
            if (!(in >> u >> v)) throw PreconditionError("malformed edge line");
            c.forest.edges.emplace_back(u, v);
        } else if (tag == "isolated") {
            Vertex v;
            if (!(in >> v)) throw PreconditionError("malformed isolated line");
            c.forest.isolated.push_back(v);
        } else if (tag == "horizon") {
            std::string dtag, frac;
            if (!(in >> c.horizon >> dtag >> frac) || dtag != "density") {
                throw PreconditionError("malformed horizon line");
            }
            c.density = Rational::parse(frac);
            closed = true;
        } else {
            throw PreconditionError("unknown certificate tag: " + tag);
        }
    }
    if (!closed) throw PreconditionError("certificate missing its horizon line");
    return c;
}

ForestCertificate read_forest_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open " + path);
    return read_forest_certificate(in);
}

TotalColoredGraph::Report check_forest_certificate(const TotalColoredGraph& g, const ForestCertificate& c) {
    auto rep = validate_simple_forest(g, c.forest);
    if (!rep.ok) return rep;
    if (c.horizon < 1 || c.horizon > g.size()) {
        return {false, "horizon " + std::to_string(c.horizon) + " outside [1, n]"};
    }
    Rational actual = density_at(c.forest.vertices(), c.horizon);
    if (actual < c.density) {
        return {false, "recorded density " + c.density.str() + " exceeds the actual " + actual.str()};
    }
    return {true, ""};
}

}  // namespace monopath
