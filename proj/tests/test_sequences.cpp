#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "monopath/sequences.hpp"

using namespace monopath;

namespace {

// test-local re-derivation of the prefix sums, independent of the library scan
Rational scan_sum_before_parity_hit(const GapSequence& g, const Rational& t, bool odd) {
    Rational sum(0);
    for (i64 i = 1; i <= g.size(); ++i) {
        bool is_odd = (i % 2 == 1);
        if (is_odd == odd && g.at(i) >= t) return sum;
        sum += g.at(i);
    }
    throw std::runtime_error("not good enough for the scan");
}

bool scan_verifies(const GapSequence& g, const Rational& t, const Rational& gamma) {
    Rational lhs = scan_sum_before_parity_hit(g, t, true) + scan_sum_before_parity_hit(g, t, false);
    QuadraticValue rho(Rational(3) - gamma, Rational(2));
    return QuadraticValue(lhs) >= rho * QuadraticValue(t);
}

i64 scan_first_rise(const std::vector<i64>& a, const Rational& t) {
    for (i64 i = 1; i <= i64(a.size()); ++i) {
        if (Rational(a[size_t(i - 1)] - i) >= t) return i;
    }
    return 0;
}

i64 scan_first_dip(const std::vector<i64>& a, const Rational& t) {
    for (i64 j = 1; j <= i64(a.size()); ++j) {
        if (Rational(j - a[size_t(j - 1)]) >= t) return j;
    }
    return 0;
}

}  // namespace

TEST_CASE("oscillation basics") {
    auto flat = OscillationSequence::of({3, 3, 3, 3, 3});
    auto info = oscillation(flat);
    CHECK(info.amount == 2);
    CHECK(info.rise_at == 1);
    CHECK(info.dip_at == 5);

    auto diag = OscillationSequence::of({1, 2, 3, 4, 5, 6});
    CHECK(oscillation(diag).amount == 0);

    auto one_sided = OscillationSequence::of({10, 10});
    CHECK(oscillation(one_sided).amount == 0);

    CHECK_THROWS_AS(OscillationSequence::of({}), PreconditionError);
    CHECK_THROWS_AS(OscillationSequence::of({3, 2}), PreconditionError);
    CHECK_THROWS_AS(OscillationSequence::of({-1, 2}), PreconditionError);
}

TEST_CASE("first rise and dip") {
    auto s = OscillationSequence::of({3, 3, 3, 3, 3});
    CHECK(first_rise(s, Rational(2)) == 1);
    CHECK(first_dip(s, Rational(2)) == 5);
    CHECK(first_rise(s, Rational(1)) == 1);
    CHECK(first_dip(s, Rational(1)) == 4);
    auto info = oscillation(s);
    CHECK_NOTHROW(first_rise(s, Rational(info.amount)));
    CHECK_NOTHROW(first_dip(s, Rational(info.amount)));
    CHECK_THROWS_AS(first_rise(s, Rational(3)), PreconditionError);
    CHECK_THROWS_AS(first_dip(s, Rational(0)), PreconditionError);
}

TEST_CASE("integer sequences ignore fractional threshold parts") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<i64> vals;
        i64 cur = 0;
        for (int i = 0; i < 60; ++i) {
            cur += i64(rng() % 4);
            vals.push_back(cur);
        }
        auto s = OscillationSequence::of(vals);
        auto info = oscillation(s);
        if (info.amount < 2) continue;
        Rational frac(i64(rng() % 3 + 1), 4);  // in (0, 1)
        Rational t = Rational(info.amount - 1) + frac;
        CHECK(first_rise(s, t) == first_rise(s, Rational(t.ceil())));
        CHECK(first_dip(s, t) == first_dip(s, Rational(t.ceil())));
    }
}

TEST_CASE("diagonal runs partition the index range") {
    auto s = OscillationSequence::of({3, 3, 3, 3, 3});
    auto p = diagonal_runs(s);
    REQUIRE(p.runs.size() == 2);
    CHECK_FALSE(p.flipped);
    CHECK(p.runs[0].begin == 1);
    CHECK(p.runs[0].end == 3);
    CHECK(p.runs[1].begin == 4);
    CHECK(p.runs[1].end == 5);
    CHECK(p.gaps == std::vector<i64>{2, 2});

    auto diag = OscillationSequence::of({1, 2, 3, 4});
    auto pd = diagonal_runs(diag);
    CHECK(pd.runs.size() == 1);
    CHECK(pd.gaps == std::vector<i64>{0});

    auto low_start = OscillationSequence::of({0, 5, 6});
    auto pf = diagonal_runs(low_start);
    CHECK(pf.flipped);
    CHECK(pf.runs[0].begin == 1);
    CHECK(pf.runs[0].end == 1);
    CHECK(pf.gaps[0] == 1);
}

TEST_CASE("runs tile the range and bound their gaps") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<i64> vals;
        i64 cur = i64(rng() % 3);
        for (int i = 0; i < 80; ++i) {
            cur += i64(rng() % 3);
            vals.push_back(cur);
        }
        auto s = OscillationSequence::of(vals);
        auto p = diagonal_runs(s);
        i64 expect_begin = 1;
        for (auto& run : p.runs) {
            CHECK(run.begin == expect_begin);
            CHECK(run.end >= run.begin);
            expect_begin = run.end + 1;
        }
        CHECK(expect_begin == s.size() + 1);
        // a nondecreasing sequence loses at most one unit of a_j - j per step
        for (size_t i = 0; i + 1 < p.runs.size(); ++i) {
            CHECK(p.runs[i].end - p.runs[i].begin + 1 >= p.gaps[i]);
        }
    }
}

TEST_CASE("goodness witnesses and prefix sums") {
    GapSequence g{{Rational(5), Rational(1), Rational(4), Rational(2)}};
    auto w2 = is_good(g, Rational(2));
    CHECK(w2.good);
    CHECK(w2.odd_index == 1);
    CHECK(w2.even_index == 4);
    CHECK_FALSE(is_good(g, Rational(4)).good);
    CHECK_FALSE(is_good(g, Rational(100)).good);

    CHECK(odd_prefix_sum(g, Rational(2)) == Rational(0));
    CHECK(even_prefix_sum(g, Rational(2)) == Rational(10));
    CHECK(odd_prefix_sum(g, Rational(1)) == Rational(0));
    CHECK(even_prefix_sum(g, Rational(1)) == Rational(5));  // i_e = 2, sum before it is a_1
    CHECK_THROWS_AS(even_prefix_sum(g, Rational(4)), PreconditionError);

    // monotone in the threshold over the good range
    Rational prev_o(0), prev_e(0);
    for (i64 t = 1; t <= 2; ++t) {
        Rational uo = odd_prefix_sum(g, Rational(t));
        Rational ue = even_prefix_sum(g, Rational(t));
        CHECK(uo >= prev_o);
        CHECK(ue >= prev_e);
        prev_o = uo;
        prev_e = ue;
    }
}

TEST_CASE("threshold search: the first candidate can already win") {
    i64 k = 10;
    GapSequence g{{Rational(6 * k), Rational(6 * k), Rational(4000), Rational(4000)}};
    auto cert = find_good_threshold(g, Rational(k), Rational(1, 2), 100);
    CHECK(cert.t == Rational(k));
    CHECK(scan_verifies(g, cert.t, Rational(1, 2)));
}

TEST_CASE("threshold search falls back to a fractional step when the margin is thin") {
    // at the record 1200 the strict-above sums give 6397, and
    // rho * 1200 < 6397 < rho * 1201 for rho = 3 + sqrt(8) - 1/2
    GapSequence g{{Rational(1000), Rational(1200), Rational(1997), Rational(3000000), Rational(3000000),
                   Rational(1)}};
    auto cert = find_good_threshold(g, Rational(1000), Rational(1, 2), 2000);
    CHECK(cert.t > Rational(1200));
    CHECK(cert.t < Rational(1201));
    CHECK_FALSE(cert.t.is_integer());
    CHECK(scan_verifies(g, cert.t, Rational(1, 2)));
}

TEST_CASE("capped searches fail loudly, guaranteed searches alarm") {
    GapSequence g{{Rational(121), Rational(121)}};
    CHECK_THROWS_AS(find_good_threshold(g, Rational(30), Rational(1, 2), 4), PreconditionError);
    GapSequence not_good{{Rational(1), Rational(1)}};
    CHECK_THROWS_AS(find_good_threshold(not_good, Rational(30), Rational(1, 2), 4), PreconditionError);
}

TEST_CASE("threshold search under the guaranteed horizon scale") {
    i64 scale = horizon_scale(Rational(1, 2));
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        i64 k = 1 + i64(rng() % 3);
        i64 cap = k * scale;
        i64 len = 4 + i64(rng() % 40);
        GapSequence g;
        for (i64 i = 0; i < len; ++i) g.values.emplace_back(i64(rng() % (2 * cap)));
        i64 odd_slot = 2 * i64(rng() % (len / 2)) + 1;       // odd index
        i64 even_slot = 2 * (1 + i64(rng() % (len / 2)));    // even index
        if (even_slot > len) even_slot = len - (len % 2 ? 1 : 0);
        g.values[size_t(odd_slot - 1)] = Rational(cap + i64(rng() % cap));
        g.values[size_t(even_slot - 1)] = Rational(cap + i64(rng() % cap));
        auto cert = find_good_threshold(g, Rational(k), Rational(1, 2), scale);
        CHECK(cert.t >= Rational(k));
        CHECK(cert.t <= Rational(cap));
        CHECK(scan_verifies(g, cert.t, Rational(1, 2)));
    }
}

TEST_CASE("oscillation threshold search re-verifies by direct scans") {
    // staircase with a deep excursion on both sides
    std::vector<i64> vals;
    for (i64 i = 1; i <= 400; ++i) {
        if (i <= 100) {
            vals.push_back(i + 150);
        } else if (i <= 250) {
            vals.push_back(250);
        } else {
            vals.push_back(250 + (i - 250) / 2);
        }
    }
    auto s = OscillationSequence::of(vals);
    auto info = oscillation(s);
    REQUIRE(info.amount >= 60);
    auto th = find_oscillation_threshold(s, Rational(15), Rational(1, 2), 4);
    CHECK(th.t >= Rational(15));
    CHECK(th.t <= Rational(60));
    CHECK(th.rise == scan_first_rise(vals, th.t));
    CHECK(th.dip == scan_first_dip(vals, th.t));
    QuadraticValue target = QuadraticValue(Rational(4) - Rational(1, 2), Rational(2)) * QuadraticValue(th.t);
    CHECK(QuadraticValue(Rational(th.rise + th.dip)) >= target);
}

TEST_CASE("recurrence trace by hand and against the closed form") {
    auto tr = recurrence_trace(5.8L, 100);
    CHECK(tr.values[0] == doctest::Approx(1.0));
    CHECK(tr.values[1] == doctest::Approx(3.8));
    CHECK(tr.values[2] == doctest::Approx(12.44));  // 4.8*3.8 - 5.8
    REQUIRE(tr.first_negative.has_value());

    for (double rho : {4.0, 5.0, 5.5, 5.8}) {
        auto trace = recurrence_trace((long double)rho, 2000);
        REQUIRE(trace.first_negative.has_value());
        // closed form 2 Re(z alpha^i) fitted to the first two terms
        long double disc = rho * rho - 6.0L * rho + 1.0L;
        REQUIRE(disc < 0);
        std::complex<long double> alpha((rho - 1.0L) / 2.0L, std::sqrt((long double)-disc) / 2.0L);
        std::complex<long double> a1 = alpha, a2 = alpha * alpha;
        // solve X*Re(a^i) - Y*Im(a^i) = b_i at i = 1, 2
        long double det = a1.real() * (-a2.imag()) - (-a1.imag()) * a2.real();
        long double b1 = 1.0L, b2 = rho - 2.0L;
        long double X = (b1 * (-a2.imag()) - (-a1.imag()) * b2) / det;
        long double Y = (a1.real() * b2 - b1 * a2.real()) / det;
        std::complex<long double> power = alpha;
        for (i64 i = 1; i <= *trace.first_negative; ++i) {
            long double closed = X * power.real() - Y * power.imag();
            long double got = trace.values[size_t(i - 1)];
            CHECK(std::fabs(closed - got) <= 1e-6L * std::max<long double>(1.0L, std::fabs(closed)));
            power *= alpha;
        }
    }
}

TEST_CASE("recurrence at the repeated-root boundary stays nonnegative") {
    long double rho = 3.0L + 2.0L * std::sqrt(2.0L);
    auto tr = recurrence_trace(rho, 10000);
    CHECK_FALSE(tr.first_negative.has_value());
    CHECK(tr.values.size() == 10000);
    // real-root regime: growth without sign change is legitimate, no alarm
    auto grow = recurrence_trace(7.0L, 500);
    CHECK_FALSE(grow.first_negative.has_value());
}

TEST_CASE("horizon scale: exact integer-pair oracle at gamma = 1/2") {
    // c_i = 2^(i-1) b_i lies in Z[sqrt2]: c_1 = 1, c_2 = 1 + 4 sqrt2,
    // c_{i+1} = (3 + 4 sqrt2) c_i - (10 + 8 sqrt2) c_{i-1}; sign(b_i) = sign(c_i)
    QuadraticValue c_prev(Rational(1), Rational(0));
    QuadraticValue c_cur(Rational(1), Rational(4));
    QuadraticValue mul(Rational(3), Rational(4));
    QuadraticValue sub(Rational(10), Rational(8));
    i64 first_neg = 0;
    for (i64 i = 3; i <= 40 && first_neg == 0; ++i) {
        QuadraticValue next = mul * c_cur - sub * c_prev;
        if (next.sign() < 0) first_neg = i;
        c_prev = c_cur;
        c_cur = next;
    }
    REQUIRE(first_neg > 0);
    auto tr = recurrence_trace(3.0L + 2.0L * std::sqrt(2.0L) - 0.5L, 1000);
    REQUIRE(tr.first_negative.has_value());
    CHECK(*tr.first_negative == first_neg);
    i64 n = horizon_scale(Rational(1, 2));
    i64 expect = 6;
    for (i64 i = 0; i < first_neg; ++i) expect *= 4;
    CHECK(n == expect);
}

TEST_CASE("horizon scale is a power-of-4 multiple of 6 and shrinks with gamma") {
    i64 prev = INT64_MAX;
    for (auto gamma : {Rational(1, 5), Rational(1, 2), Rational(1), Rational(2), Rational(11, 2)}) {
        i64 n = horizon_scale(gamma);
        i64 q = n / 6;
        CHECK(n % 6 == 0);
        while (q % 4 == 0) q /= 4;
        CHECK(q == 1);
        CHECK(n <= prev);
        prev = n;
    }
    CHECK(horizon_scale(Rational(11, 2)) == 96);  // rho < 2 makes b_2 negative immediately
    CHECK_THROWS_AS(horizon_scale(Rational(0)), PreconditionError);
    CHECK_THROWS_AS(horizon_scale(Rational(6)), PreconditionError);
}

TEST_CASE("extremal gap sequence meets the record recursion with equality") {
    auto g = extremal_gap_sequence(Rational(29, 5), 3);
    REQUIRE(g.size() == 3);
    CHECK(g.at(1) == Rational(1));
    CHECK(g.at(2) == Rational(19, 5));
    CHECK(g.at(3) == Rational(311, 25));
    auto longer = extremal_gap_sequence(Rational(29, 5), 12);
    Rational rho(29, 5);
    for (i64 j = 1; j + 1 <= longer.size(); ++j) {
        Rational sum(0);
        for (i64 m = 1; m <= j - 1; ++m) sum += longer.at(m);
        CHECK(longer.at(j + 1) == (rho - Rational(2)) * longer.at(j) - Rational(2) * sum);
        CHECK(longer.at(j).sign() > 0);
    }
    // rho = 4 goes negative at index 4: 1, 2, 2, -2
    auto short_lived = extremal_gap_sequence(Rational(4), 3);
    CHECK(short_lived.at(3) == Rational(2));
    CHECK_THROWS_AS(extremal_gap_sequence(Rational(4), 4), PreconditionError);
    // deep prefixes at denominator 5 leave 64-bit range before going negative
    CHECK_THROWS_AS(extremal_gap_sequence(Rational(29, 5), 100), OverflowError);
}

TEST_CASE("extremal embeddings never certify a ratio above their rho") {
    Rational rho(29, 5);
    auto base = extremal_gap_sequence(rho, 10);
    GapSequence g = base;
    // append one huge value of each parity so the goodness precondition holds
    g.values.emplace_back(Rational(50000000));
    g.values.emplace_back(Rational(50000000));
    auto cert = find_good_threshold(g, Rational(1), Rational(1, 2), 1000000);
    CHECK(scan_verifies(g, cert.t, Rational(1, 2)));
    if (cert.odd_index <= base.size() && cert.even_index <= base.size()) {
        CHECK(cert.odd_sum + cert.even_sum <= rho * cert.t);
    }
}

TEST_CASE("sequence file io") {
    auto s = OscillationSequence::of({0, 2, 5, 5, 9});
    write_sequence_file("seq_roundtrip.txt", s);
    auto back = read_sequence_file("seq_roundtrip.txt");
    CHECK(back.values == s.values);
    std::remove("seq_roundtrip.txt");
}
