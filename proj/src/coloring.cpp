#include "monopath/coloring.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "monopath/errors.hpp"

namespace monopath {

GeometricColoring GeometricColoring::build(const QuadraticValue& q, i64 min_vertices) {
    if (!(q > QuadraticValue(Rational(1)))) throw PreconditionError("growth rate must exceed 1");
    if (min_vertices < 1) throw PreconditionError("prefix size must be positive");
    GeometricColoring c;
    c.q_ = q;
    c.block_starts_ = {1};
    QuadraticValue power(Rational(1));  // q^i
    i64 total = 0;
    i64 level = 0;
    while (total < min_vertices) {
        i64 size = power.floor_int();
        if (size < 1) throw InvariantViolation("block size below 1 at level " + std::to_string(level));
        total = checked_add(total, size);
        c.block_starts_.push_back(checked_add(c.block_starts_.back(), size));
        power = power * q;
        ++level;
    }
    c.build_prefix_counts();
    return c;
}

GeometricColoring GeometricColoring::from_block_sizes(const std::vector<i64>& sizes) {
    if (sizes.empty()) throw PreconditionError("no blocks");
    if (sizes.front() != 1) throw PreconditionError("first block must have size 1");
    GeometricColoring c;
    c.q_ = QuadraticValue(Rational(0));
    c.block_starts_ = {1};
    i64 prev = 0;
    for (i64 s : sizes) {
        if (s < prev) throw PreconditionError("block sizes must be nondecreasing");
        prev = s;
        c.block_starts_.push_back(checked_add(c.block_starts_.back(), s));
    }
    c.build_prefix_counts();
    return c;
}

void GeometricColoring::build_prefix_counts() {
    i64 levels = block_count();
    reds_below_block_.assign(size_t(levels) + 1, 0);
    blues_below_block_.assign(size_t(levels) + 1, 0);
    for (i64 i = 0; i < levels; ++i) {
        reds_below_block_[size_t(i) + 1] = reds_below_block_[size_t(i)] + (i % 2 == 1 ? block_size(i) : 0);
        blues_below_block_[size_t(i) + 1] = blues_below_block_[size_t(i)] + (i % 2 == 0 ? block_size(i) : 0);
    }
}

i64 GeometricColoring::block_of(Vertex v) const {
    if (v < 1 || v > size()) {
        throw PreconditionError("vertex " + std::to_string(v) + " outside the prefix [1, " +
                                std::to_string(size()) + "]");
    }
    auto it = std::upper_bound(block_starts_.begin(), block_starts_.end(), v);
    return i64(it - block_starts_.begin()) - 1;
}

Color GeometricColoring::edge_color(Vertex u, Vertex v) const {
    if (u == v) throw PreconditionError("no loops");
    i64 lo = std::min(block_of(u), block_of(v));
    return (lo % 2 == 1) ? Color::Red : Color::Blue;
}

i64 GeometricColoring::count_of(Color c) const {
    i64 levels = block_count();
    return c == Color::Red ? reds_below_block_[size_t(levels)] : blues_below_block_[size_t(levels)];
}

i64 GeometricColoring::color_rank(Vertex v) const {
    i64 b = block_of(v);
    i64 below = (b % 2 == 1) ? reds_below_block_[size_t(b)] : blues_below_block_[size_t(b)];
    return below + (v - block_begin(b)) + 1;
}

std::vector<Vertex> BlockMatching::vertices() const {
    std::vector<Vertex> out;
    out.reserve(pairs.size() * 2);
    for (auto [u, v] : pairs) {
        out.push_back(u);
        out.push_back(v);
    }
    return out;
}

ColoringMatchings canonical_matchings(const GeometricColoring& c) {
    ColoringMatchings m;
    m.red.color = Color::Red;
    m.blue.color = Color::Blue;
    i64 last = c.block_count() - 1;
    for (i64 b = 1; b + 1 <= last; b += 2) {  // odd block b paired into b+1
        for (i64 j = 0; j < c.block_size(b); ++j) {
            m.red.pairs.emplace_back(c.block_begin(b) + j, c.block_begin(b + 1) + j);
        }
    }
    for (i64 b = 0; b + 1 <= last; b += 2) {  // even block b paired into b+1
        for (i64 j = 0; j < c.block_size(b); ++j) {
            m.blue.pairs.emplace_back(c.block_begin(b) + j, c.block_begin(b + 1) + j);
        }
    }
    return m;
}

std::vector<char> matching_shadow(const GeometricColoring& c, Color color) {
    std::vector<char> covered(size_t(c.size()) + 1, 0);
    i64 own_parity = (color == Color::Red) ? 1 : 0;
    for (i64 b = 0; b < c.block_count(); ++b) {
        if (b % 2 == own_parity) {
            for (i64 j = 0; j < c.block_size(b); ++j) covered[size_t(c.block_begin(b) + j)] = 1;
        } else if (b > 0 && (b - 1) % 2 == own_parity) {
            for (i64 j = 0; j < c.block_size(b - 1); ++j) covered[size_t(c.block_begin(b) + j)] = 1;
        }
    }
    return covered;
}

i64 exposed_red_count(const GeometricColoring& c) {
    i64 total = 0;
    for (i64 b = 1; b < c.block_count(); b += 2) total += c.block_size(b) - c.block_size(b - 1);
    return total;
}

i64 exposed_blue_count(const GeometricColoring& c) {
    i64 total = c.block_size(0);
    for (i64 b = 2; b < c.block_count(); b += 2) total += c.block_size(b) - c.block_size(b - 1);
    return total;
}

Vertex nth_exposed_red(const GeometricColoring& c, i64 t) {
    if (t < 1) throw PreconditionError("star index must be positive");
    i64 cum = 0;
    for (i64 b = 1; b < c.block_count(); b += 2) {
        i64 here = c.block_size(b) - c.block_size(b - 1);
        if (t <= cum + here) return c.block_begin(b) + c.block_size(b - 1) + (t - cum - 1);
        cum += here;
    }
    throw PreconditionError("only " + std::to_string(cum) + " exposed red vertices in the prefix");
}

Vertex nth_exposed_blue(const GeometricColoring& c, i64 t) {
    if (t < 1) throw PreconditionError("star index must be positive");
    if (t <= c.block_size(0)) return c.block_begin(0) + (t - 1);
    i64 cum = c.block_size(0);
    for (i64 b = 2; b < c.block_count(); b += 2) {
        i64 here = c.block_size(b) - c.block_size(b - 1);
        if (t <= cum + here) return c.block_begin(b) + c.block_size(b - 1) + (t - cum - 1);
        cum += here;
    }
    throw PreconditionError("only " + std::to_string(cum) + " exposed blue vertices in the prefix");
}

i64 red_star_rank(const GeometricColoring& c, i64 t) {
    if (t < 1) throw PreconditionError("star index must be positive");
    i64 cum = 0;
    i64 even_sizes = 0;  // sum of |A_{2j}| for 2j below the current odd block
    for (i64 b = 1; b < c.block_count(); b += 2) {
        even_sizes += c.block_size(b - 1);
        i64 here = c.block_size(b) - c.block_size(b - 1);
        if (t <= cum + here) return t + even_sizes;
        cum += here;
    }
    throw PreconditionError("star index " + std::to_string(t) + " beyond available exposed reds");
}

i64 blue_star_rank(const GeometricColoring& c, i64 t) {
    if (t < 1) throw PreconditionError("star index must be positive");
    if (t <= c.block_size(0)) return t;
    i64 cum = c.block_size(0);
    i64 odd_sizes = 0;  // sum of |A_{2j-1}| below the current even block
    for (i64 b = 2; b < c.block_count(); b += 2) {
        odd_sizes += c.block_size(b - 1);
        i64 here = c.block_size(b) - c.block_size(b - 1);
        if (t <= cum + here) return t + odd_sizes;
        cum += here;
    }
    throw PreconditionError("star index " + std::to_string(t) + " beyond available exposed blues");
}

Reordering build_reordering(const GeometricColoring& c) {
    i64 n = c.size();
    std::vector<Vertex> reds, blues;
    reds.reserve(size_t(c.count_of(Color::Red)));
    blues.reserve(size_t(c.count_of(Color::Blue)));
    for (i64 b = 0; b < c.block_count(); ++b) {
        auto& side = (b % 2 == 1) ? reds : blues;
        for (i64 j = 0; j < c.block_size(b); ++j) side.push_back(c.block_begin(b) + j);
    }
    std::vector<Vertex> red_stars, blue_stars;
    for (i64 t = 1; t <= exposed_red_count(c); ++t) red_stars.push_back(nth_exposed_red(c, t));
    for (i64 t = 1; t <= exposed_blue_count(c); ++t) blue_stars.push_back(nth_exposed_blue(c, t));

    Reordering r;
    r.fwd.reserve(size_t(n));
    r.inv.assign(size_t(n), 0);
    auto emit = [&](Vertex v) {
        r.fwd.push_back(v);
        r.inv[size_t(v - 1)] = i64(r.fwd.size());
    };
    size_t bi = 0, ri = 0, sb = 0, sr = 0;
    bool blue_turn = true;
    while (r.fwd.size() < size_t(n)) {
        auto& queue = blue_turn ? blues : reds;
        auto& other = blue_turn ? reds : blues;
        auto& cursor = blue_turn ? bi : ri;
        auto& other_cursor = blue_turn ? ri : bi;
        auto& stars = blue_turn ? blue_stars : red_stars;
        auto& star_cursor = blue_turn ? sb : sr;
        auto& positions = blue_turn ? r.blue_star_positions : r.red_star_positions;
        if (star_cursor < stars.size()) {
            Vertex target = stars[star_cursor++];
            while (cursor < queue.size()) {
                Vertex v = queue[cursor++];
                emit(v);
                if (v == target) break;
            }
            positions.push_back(i64(r.fwd.size()));
            blue_turn = !blue_turn;
        } else {
            // no further switch points: flush this color, then the other
            while (cursor < queue.size()) emit(queue[cursor++]);
            while (other_cursor < other.size()) emit(other[other_cursor++]);
        }
    }
    return r;
}

DensityProfile density_profile(const GeometricColoring& c, const BlockMatching& m, const Reordering& f) {
    i64 n = c.size();
    std::vector<char> covered(size_t(n) + 1, 0);
    for (auto [u, v] : m.pairs) {
        covered[size_t(u)] = 1;
        covered[size_t(v)] = 1;
    }
    DensityProfile p;
    p.values.reserve(size_t(n));
    i64 count = 0;
    i64 best_num = 0, best_k = 1;
    for (i64 k = 1; k <= n; ++k) {
        count += covered[size_t(f(k))];
        p.values.emplace_back(count, k);
        if (i128(count) * best_k > i128(best_num) * k) {
            best_num = count;
            best_k = k;
        }
    }
    p.peak_k = best_k;
    p.peak = Rational(best_num, best_k);

    i64 t_max = std::min(exposed_red_count(c), exposed_blue_count(c));
    i64 prev_jump_r = 0, prev_jump_b = 0;
    for (i64 t = 1; t <= t_max; ++t) {
        i64 lr = red_star_rank(c, t);
        i64 lb = blue_star_rank(c, t);
        i64 jump_r = lr - t, jump_b = lb - t;
        if (t == 1 || jump_r > prev_jump_r || jump_b > prev_jump_b) {
            i64 k = lr + lb - 1;
            ProfileBreakpoint bp;
            bp.t = t;
            bp.k = k;
            bp.envelope = Rational(1) - Rational(t - 1, k);
            bp.value = p.values[size_t(k - 1)];
            p.breakpoints.push_back(bp);
        }
        prev_jump_r = jump_r;
        prev_jump_b = jump_b;
    }
    return p;
}

QuadraticValue path_density_bound(const QuadraticValue& q) {
    if (!(q > QuadraticValue(Rational(1)))) throw PreconditionError("growth rate must exceed 1");
    QuadraticValue q2 = q * q;
    QuadraticValue num = q2 + QuadraticValue(Rational(2)) * q - QuadraticValue(Rational(1));
    QuadraticValue den = q2 + QuadraticValue(Rational(3)) * q - QuadraticValue(Rational(2));
    return num / den;
}

QuadraticValue optimal_upper_density() {
    return QuadraticValue(Rational(12, 17), Rational(2, 17));
}

double minimize_density_bound(double lo, double hi, int iterations) {
    auto f = [](long double q) { return (q * q + 2 * q - 1) / (q * q + 3 * q - 2); };
    long double a = lo, b = hi;
    int i = 0;
    for (; i < iterations && (b - a) > 1e-6L; ++i) {
        long double m1 = a + (b - a) / 3;
        long double m2 = b - (b - a) / 3;
        if (f(m1) < f(m2)) b = m2; else a = m1;
    }
    // the bound is flat near its minimum, so value comparisons drown in
    // rounding there; its slope has the exact sign of q^2 - 2q - 1
    for (; i < iterations; ++i) {
        long double m = (a + b) / 2;
        if (m * m - 2 * m - 1 < 0) a = m; else b = m;
    }
    return double((a + b) / 2);
}

std::vector<SweepRow> sweep_growth_rates(const std::vector<std::pair<std::string, QuadraticValue>>& qs,
                                         i64 min_vertices) {
    std::vector<SweepRow> rows;
    rows.reserve(qs.size());
    for (const auto& [label, q] : qs) {
        GeometricColoring c = GeometricColoring::build(q, min_vertices);
        auto matchings = canonical_matchings(c);
        Reordering f = build_reordering(c);
        DensityProfile p = density_profile(c, matchings.red, f);
        rows.push_back({label, q, path_density_bound(q), p.peak});
    }
    return rows;
}

TotalColoredGraph to_total_coloring(const GeometricColoring& c) {
    i64 n = c.size();
    TotalColoredGraph g(n, Rational(0));
    for (Vertex v = 1; v <= n; ++v) g.set_vertex_color(v, c.vertex_color(v));
    for (Vertex u = 1; u <= n; ++u) {
        for (Vertex v = u + 1; v <= n; ++v) g.set_edge(u, v, c.edge_color(u, v));
    }
    return g;
}

GeometricColoring blocks_from_total_coloring(const TotalColoredGraph& g) {
    if (g.vertex_color(1) != Color::Blue) throw PreconditionError("a geometric prefix starts with a blue vertex");
    std::vector<i64> sizes;
    Color current = Color::Blue;
    i64 run = 0;
    for (Vertex v = 1; v <= g.size(); ++v) {
        if (g.vertex_color(v) == current) {
            ++run;
        } else {
            sizes.push_back(run);
            current = g.vertex_color(v);
            run = 1;
        }
    }
    sizes.push_back(run);
    GeometricColoring c = GeometricColoring::from_block_sizes(sizes);
    for (Vertex u = 1; u <= g.size(); ++u) {
        for (Vertex v = u + 1; v <= g.size(); ++v) {
            auto col = g.edge(u, v);
            if (!col) throw PreconditionError("geometric prefixes are complete; edge {" + std::to_string(u) +
                                              "," + std::to_string(v) + "} missing");
            if (*col != c.edge_color(u, v)) {
                throw PreconditionError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                                        "} contradicts the block parity rule");
            }
        }
    }
    return c;
}

void write_profile_csv(std::ostream& out, const DensityProfile& p) {
    out << "k,density_num,density_den\n";
    for (const auto& bp : p.breakpoints) {
        out << bp.k << "," << bp.value.num << "," << bp.value.den << "\n";
    }
}

void write_profile_csv(const std::string& path, const DensityProfile& p) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot open " + path + " for writing");
    write_profile_csv(out, p);
}

std::vector<ProfileBreakpoint> read_profile_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header != "k,density_num,density_den") {
        throw PreconditionError("malformed profile CSV header");
    }
    std::vector<ProfileBreakpoint> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ProfileBreakpoint bp;
        i64 num = 0, den = 1;
        if (std::sscanf(line.c_str(), "%ld,%ld,%ld", &bp.k, &num, &den) != 3) {
            throw PreconditionError("malformed profile CSV row: " + line);
        }
        bp.value = Rational(num, den);
        rows.push_back(bp);
    }
    return rows;
}

std::vector<ProfileBreakpoint> read_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open " + path);
    return read_profile_csv(in);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "q,bound,empirical_num,empirical_den,empirical\n";
    char buf[64];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.12f", row.bound.to_double());
        out << row.q_label << "," << buf << "," << row.empirical.num << "," << row.empirical.den;
        std::snprintf(buf, sizeof buf, "%.12f", row.empirical.to_double());
        out << "," << buf << "\n";
    }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot open " + path + " for writing");
    write_sweep_csv(out, rows);
}

std::vector<SweepCsvRow> read_sweep_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header != "q,bound,empirical_num,empirical_den,empirical") {
        throw PreconditionError("malformed sweep CSV header");
    }
    std::vector<SweepCsvRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        SweepCsvRow row;
        char label[64];
        i64 num = 0, den = 1;
        double emp_float = 0;
        if (std::sscanf(line.c_str(), "%63[^,],%lf,%ld,%ld,%lf", label, &row.bound, &num, &den, &emp_float) != 5) {
            throw PreconditionError("malformed sweep CSV row: " + line);
        }
        row.q_label = label;
        row.empirical = Rational(num, den);
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepCsvRow> read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open " + path);
    return read_sweep_csv(in);
}

QuadraticValue parse_growth_rate(const std::string& text) {
    if (text == "silver") return QuadraticValue::silver_ratio();
    return QuadraticValue(Rational::parse(text));
}

}  // namespace monopath
