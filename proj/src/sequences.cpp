#include "monopath/sequences.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "monopath/errors.hpp"

namespace monopath {

OscillationSequence OscillationSequence::of(std::vector<i64> v) {
    if (v.empty()) throw PreconditionError("empty sequence");
    i64 prev = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0) throw PreconditionError("negative entry at index " + std::to_string(i + 1));
        if (v[i] < prev) throw PreconditionError("sequence decreases at index " + std::to_string(i + 1));
        prev = v[i];
    }
    return OscillationSequence{std::move(v)};
}

OscillationInfo oscillation(const OscillationSequence& s) {
    if (s.values.empty()) throw PreconditionError("empty sequence");
    OscillationInfo info;
    i64 best_rise = INT64_MIN, best_dip = INT64_MIN;
    for (i64 i = 1; i <= s.size(); ++i) {
        i64 rise = s.at(i) - i;
        i64 dip = i - s.at(i);
        if (rise > best_rise) {
            best_rise = rise;
            info.rise_at = i;
        }
        if (dip > best_dip) {
            best_dip = dip;
            info.dip_at = i;
        }
    }
    info.amount = std::max<i64>(0, std::min(best_rise, best_dip));
    return info;
}

namespace {

bool at_least(i64 value, const Rational& t) {
    // value >= t without constructing rationals in the scan loop
    return i128(value) * t.den >= i128(t.num);
}

}  // namespace

i64 first_rise(const OscillationSequence& s, const Rational& t) {
    if (t.sign() <= 0) throw PreconditionError("threshold must be positive");
    auto info = oscillation(s);
    if (Rational(info.amount) < t) {
        throw PreconditionError("threshold " + t.str() + " exceeds the oscillation " + std::to_string(info.amount));
    }
    for (i64 i = 1; i <= s.size(); ++i) {
        if (at_least(s.at(i) - i, t)) return i;
    }
    throw InvariantViolation("rise index missing below the oscillation");
}

i64 first_dip(const OscillationSequence& s, const Rational& t) {
    if (t.sign() <= 0) throw PreconditionError("threshold must be positive");
    auto info = oscillation(s);
    if (Rational(info.amount) < t) {
        throw PreconditionError("threshold " + t.str() + " exceeds the oscillation " + std::to_string(info.amount));
    }
    for (i64 j = 1; j <= s.size(); ++j) {
        if (at_least(j - s.at(j), t)) return j;
    }
    throw InvariantViolation("dip index missing below the oscillation");
}

RunPartition diagonal_runs(const OscillationSequence& s) {
    if (s.values.empty()) throw PreconditionError("empty sequence");
    RunPartition p;
    p.flipped = s.at(1) < 1;
    bool above = s.at(1) >= 1;
    i64 begin = 1;
    i64 gap = 0;
    for (i64 j = 1; j <= s.size(); ++j) {
        bool j_above = s.at(j) >= j;
        if (j_above != above) {
            p.runs.push_back({begin, j - 1});
            p.gaps.push_back(gap);
            begin = j;
            gap = 0;
            above = j_above;
        }
        gap = std::max<i64>(gap, std::abs(s.at(j) - j));
    }
    p.runs.push_back({begin, s.size()});
    p.gaps.push_back(gap);
    return p;
}

bool GapSequence::all_integral() const {
    for (const auto& v : values) {
        if (!v.is_integer()) return false;
    }
    return true;
}

GoodWitness is_good(const GapSequence& g, const Rational& threshold) {
    GoodWitness w;
    for (i64 i = 1; i <= g.size(); ++i) {
        if (g.at(i) < threshold) continue;
        if (i % 2 == 1 && w.odd_index == 0) w.odd_index = i;
        if (i % 2 == 0 && w.even_index == 0) w.even_index = i;
        if (w.odd_index && w.even_index) break;
    }
    w.good = w.odd_index != 0 && w.even_index != 0;
    return w;
}

namespace {

Rational prefix_sum_before(const GapSequence& g, i64 stop) {
    Rational sum(0);
    for (i64 i = 1; i < stop; ++i) sum += g.at(i);
    return sum;
}

i64 first_reaching(const GapSequence& g, const Rational& t, int parity) {
    for (i64 i = 1 + (parity == 0 ? 1 : 0); i <= g.size(); i += 2) {
        if (g.at(i) >= t) return i;
    }
    return 0;
}

}  // namespace

Rational odd_prefix_sum(const GapSequence& g, const Rational& t) {
    i64 i = first_reaching(g, t, 1);
    if (i == 0) throw PreconditionError("no odd index reaches " + t.str() + "; sequence is not that good");
    return prefix_sum_before(g, i);
}

Rational even_prefix_sum(const GapSequence& g, const Rational& t) {
    i64 i = first_reaching(g, t, 0);
    if (i == 0) throw PreconditionError("no even index reaches " + t.str() + "; sequence is not that good");
    return prefix_sum_before(g, i);
}

namespace {

struct SumProbe {
    i64 odd_index = 0, even_index = 0;
    Rational odd_sum, even_sum;
};

SumProbe sums_at(const GapSequence& g, const Rational& t) {
    SumProbe p;
    p.odd_index = first_reaching(g, t, 1);
    p.even_index = first_reaching(g, t, 0);
    if (p.odd_index == 0 || p.even_index == 0) {
        throw PreconditionError("sequence is not " + t.str() + "-good");
    }
    p.odd_sum = prefix_sum_before(g, p.odd_index);
    p.even_sum = prefix_sum_before(g, p.even_index);
    return p;
}

}  // namespace

ThresholdCertificate find_good_threshold(const GapSequence& g, const Rational& k, const Rational& gamma,
                                         i64 scale) {
    if (k.sign() <= 0) throw PreconditionError("k must be positive");
    if (scale < 0) throw PreconditionError("scale must be nonnegative");
    if (scale == 0) scale = horizon_scale(gamma);
    QuadraticValue rho = QuadraticValue(Rational(3) - gamma, Rational(2));  // 3 + sqrt(8) - gamma
    if (rho.sign() <= 0) throw PreconditionError("gamma must stay below 3 + sqrt 8");
    Rational cap = k * Rational(scale);
    if (!is_good(g, cap).good) {
        throw PreconditionError("sequence is not (k*scale)-good for k*scale = " + cap.str());
    }

    auto certify = [&](const Rational& t) -> std::optional<ThresholdCertificate> {
        SumProbe p = sums_at(g, t);
        if (QuadraticValue(p.odd_sum + p.even_sum) >= rho * QuadraticValue(t)) {
            return ThresholdCertificate{t, p.odd_index, p.even_index, p.odd_sum, p.even_sum};
        }
        return std::nullopt;
    };

    if (auto c = certify(k)) return *c;

    bool integral = g.all_integral();
    std::vector<Rational> distinct = g.values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    auto step_above = [&](const Rational& v) -> Rational {
        if (integral) return Rational(1);
        auto it = std::upper_bound(distinct.begin(), distinct.end(), v);
        if (it == distinct.end()) return Rational(1);
        return (*it - v) * Rational(1, 2);
    };

    Rational record(-1);
    for (i64 i = 1; i <= g.size(); ++i) {
        const Rational& v = g.at(i);
        if (!(v > record)) continue;
        record = v;
        if (v < k || v >= cap) continue;
        Rational probe = v + step_above(v);
        if (probe > cap) probe = cap;
        if (!(probe > v)) continue;
        SumProbe p = sums_at(g, probe);
        QuadraticValue total(p.odd_sum + p.even_sum);
        if (total >= rho * QuadraticValue(probe)) {
            return ThresholdCertificate{probe, p.odd_index, p.even_index, p.odd_sum, p.even_sum};
        }
        if (total > rho * QuadraticValue(v)) {
            // the inequality holds only on a sub-step window just above v;
            // pick a dyadic rational inside it
            QuadraticValue limit = total / rho;
            for (int bits : {20, 40, 56}) {
                Rational t = rational_below(limit, bits);
                if (t > probe) t = probe;
                if (!(t > v)) continue;
                if (auto c = certify(t)) return *c;
            }
            throw InvariantViolation("certified window above " + v.str() + " is narrower than 2^-56");
        }
    }

    i64 guaranteed = 0;
    try {
        guaranteed = horizon_scale(gamma);
    } catch (const OverflowError&) {
        guaranteed = INT64_MAX;  // far beyond any usable scale
    }
    if (scale >= guaranteed) {
        throw InvariantViolation("no certified threshold in [k, k*scale] although scale " +
                                 std::to_string(scale) + " meets the guaranteed horizon scale " +
                                 std::to_string(guaranteed));
    }
    throw PreconditionError("threshold-search: no certified threshold under capped horizon scale " +
                            std::to_string(scale) + " (guaranteed scale is " + std::to_string(guaranteed) + ")");
}

OscillationThreshold find_oscillation_threshold(const OscillationSequence& s, const Rational& k,
                                                const Rational& gamma, i64 scale) {
    if (scale == 0) scale = horizon_scale(gamma);
    auto info = oscillation(s);
    Rational cap = k * Rational(scale);
    if (Rational(info.amount) < cap) {
        throw PreconditionError("oscillation " + std::to_string(info.amount) + " below k*scale = " + cap.str());
    }
    auto runs = diagonal_runs(s);
    GapSequence g;
    g.values.reserve(runs.gaps.size());
    for (i64 gap : runs.gaps) g.values.emplace_back(gap);
    ThresholdCertificate cert = find_good_threshold(g, k, gamma, scale);
    i64 rise = first_rise(s, cert.t);
    i64 dip = first_dip(s, cert.t);
    QuadraticValue target = QuadraticValue(Rational(4) - gamma, Rational(2)) * QuadraticValue(cert.t);
    if (!(QuadraticValue(Rational(rise + dip)) >= target)) {
        throw InvariantViolation("rise/dip total misses the certified bound at t = " + cert.t.str());
    }
    return {cert.t, rise, dip};
}

RecurrenceTrace recurrence_trace(long double rho, i64 max_len) {
    if (max_len < 2) throw PreconditionError("trace needs at least two terms");
    RecurrenceTrace tr;
    tr.rho = rho;
    const long double eps = LDBL_EPSILON;
    long double b_prev = 1.0L;
    long double b_cur = rho - 2.0L;
    tr.values.push_back(b_prev);
    tr.values.push_back(b_cur);

    // A rounding error injected at step j evolves under the same recurrence,
    // so its contribution at step i is at most (i-j) * R^(i-j-1) where R
    // dominates the characteristic-root moduli (sqrt(rho) when the roots are
    // complex, the larger real root otherwise). Tracking P = sum d_j R^(i-j)
    // and Q = sum d_j (i-j) R^(i-j-1) keeps the ball tight enough to certify
    // signs even when the trace itself grows like rho^(i/2).
    long double disc = rho * rho - 6.0L * rho + 1.0L;
    long double radius = std::max(std::sqrt(std::max(rho, 0.0L)),
                                  (std::fabs(rho - 1.0L) + std::sqrt(std::max(disc, 0.0L))) / 2.0L);
    radius *= (1.0L + 16.0L * eps);
    long double p_acc = std::fabs(b_cur) * eps;  // delta at step 2
    long double q_acc = 0.0L;

    auto classify = [&](long double b, long double e, i64 idx) {
        if (tr.first_negative) return;
        if (b < -e) {
            tr.first_negative = idx;
        } else if (b <= e) {
            throw InvariantViolation("recurrence sign at index " + std::to_string(idx) +
                                     " is inside the rounding ball; raise the precision");
        }
    };
    classify(b_cur, p_acc, 2);

    for (i64 i = 3; i <= max_len && !tr.first_negative; ++i) {
        long double hi = (rho - 1.0L) * b_cur;
        long double lo = rho * b_prev;
        long double next = hi - lo;
        if (!std::isfinite(next)) break;
        long double local = (std::fabs(hi) + std::fabs(lo) + std::fabs(next)) * eps * 2;
        q_acc = radius * q_acc + p_acc;
        p_acc = radius * p_acc + local;
        tr.values.push_back(next);
        classify(next, q_acc + local, i);
        b_prev = b_cur;
        b_cur = next;
    }

    if (!tr.first_negative) {
        long double tol = (rho * rho + 6.0L * rho + 1.0L) * eps * 16.0L;
        if (disc < -tol && i64(tr.values.size()) >= max_len) {
            throw InvariantViolation("no sign change within " + std::to_string(max_len) +
                                     " terms although the characteristic roots are complex");
        }
    }
    return tr;
}

i64 horizon_scale(const Rational& gamma) {
    QuadraticValue g{gamma};
    QuadraticValue upper(Rational(3), Rational(2));  // 3 + sqrt 8
    if (!(g > QuadraticValue(Rational(0))) || !(g < upper)) {
        throw PreconditionError("gamma must lie in (0, 3 + sqrt 8)");
    }
    long double rho = 3.0L + 2.0L * std::sqrt(2.0L) - gamma.to_long_double();
    auto tr = recurrence_trace(rho, 200000);
    if (!tr.first_negative) throw InvariantViolation("recurrence stayed nonnegative for rho = 3 + sqrt 8 - gamma");
    i64 n = 6;
    for (i64 i = 0; i < *tr.first_negative; ++i) n = checked_mul(n, 4);
    return n;
}

GapSequence extremal_gap_sequence(const Rational& rho, i64 length) {
    if (length < 1) throw PreconditionError("length must be positive");
    GapSequence g;
    g.values.push_back(Rational(1));
    if (length >= 2) g.values.push_back(rho - Rational(2));
    for (i64 i = 3; i <= length; ++i) {
        const Rational& b1 = g.values[size_t(i - 2)];
        const Rational& b0 = g.values[size_t(i - 3)];
        g.values.push_back((rho - Rational(1)) * b1 - rho * b0);
    }
    for (i64 i = 1; i <= i64(g.values.size()); ++i) {
        if (g.at(i).sign() <= 0) {
            throw PreconditionError("length too long: entry " + std::to_string(i) + " is not positive");
        }
    }
    return g;
}

OscillationSequence read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open " + path);
    std::vector<i64> values;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        i64 v;
        while (ls >> v) values.push_back(v);
        if (!ls.eof() && ls.fail()) {
            std::string bad;
            ls.clear();
            ls >> bad;
            throw PreconditionError("malformed sequence token: " + bad);
        }
    }
    return OscillationSequence::of(std::move(values));
}

void write_sequence_file(const std::string& path, const OscillationSequence& s) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot open " + path + " for writing");
    for (size_t i = 0; i < s.values.size(); ++i) {
        out << s.values[i] << (i + 1 == s.values.size() ? "\n" : " ");
    }
}

}  // namespace monopath
