#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "monopath/quadratic.hpp"

using namespace monopath;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(3, 4) * Rational(2, 3)) == Rational(1, 2));
    CHECK((Rational(1, 2) / Rational(1, 4)) == Rational(2));
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(5, 3) > Rational(3, 2));
    CHECK_THROWS_AS(Rational(1, 0), PreconditionError);
}

TEST_CASE("rational overflow is an explicit error") {
    Rational big(INT64_MAX - 1);
    CHECK_THROWS_AS(big * big, OverflowError);
    CHECK_THROWS_AS(big + Rational(INT64_MAX - 1), OverflowError);
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("0.05") == Rational(1, 20));
    CHECK(Rational::parse("-0.5") == Rational(-1, 2));
    CHECK(Rational::parse("1.25") == Rational(5, 4));
    CHECK_THROWS_AS(Rational::parse("abc"), PreconditionError);
}

TEST_CASE("quadratic sign is exact near ties") {
    // 99/70 is a convergent of sqrt(2): 99^2 = 9801, 2*70^2 = 9800
    QuadraticValue just_below(Rational(99, 70));
    CHECK((just_below - QuadraticValue::sqrt_two()).sign() == 1);
    QuadraticValue just_above(Rational(140, 99));  // 140^2 = 19600 < 2*99^2 = 19602
    CHECK((just_above - QuadraticValue::sqrt_two()).sign() == -1);
    CHECK(QuadraticValue(Rational(0)).sign() == 0);
    CHECK((QuadraticValue::silver_ratio() - QuadraticValue(Rational(2))).sign() == 1);
    CHECK((QuadraticValue::silver_ratio() - QuadraticValue(Rational(3))).sign() == -1);
}

TEST_CASE("quadratic field arithmetic round-trips") {
    QuadraticValue q = QuadraticValue::silver_ratio();
    QuadraticValue x{Rational(7, 3), Rational(-2, 5)};
    CHECK((x / q) * q == x);
    CHECK(q * q == QuadraticValue(Rational(3), Rational(2)));
    CHECK(q.pow_u(0) == QuadraticValue(Rational(1)));
    CHECK(q.pow_u(5) == q * q * q * q * q);
}

TEST_CASE("silver-ratio powers floor to the block sizes") {
    // independent check: floor((1+sqrt2)^i) via integer coordinates a + b*sqrt2
    // and an isqrt of 2b^2
    QuadraticValue q = QuadraticValue::silver_ratio();
    i64 expected[] = {1, 2, 5, 14, 33, 82, 197, 478, 1153, 2786, 6725, 16238};
    i64 a = 1, b = 0;  // (1+sqrt2)^i = a + b sqrt2
    for (int i = 0; i < 12; ++i) {
        CHECK(q.pow_u(unsigned(i)).floor_int() == expected[i]);
        i64 floor_direct = a + i64(isqrt_u128(u128(2) * u128(b) * u128(b)));
        CHECK(floor_direct == expected[i]);
        i64 na = a + 2 * b, nb = a + b;
        a = na;
        b = nb;
    }
}

TEST_CASE("floors of rational powers") {
    QuadraticValue q(Rational(3, 2));
    i64 expected[] = {1, 1, 2, 3, 5, 7, 11, 17, 25, 38};
    for (int i = 0; i < 10; ++i) {
        CHECK(q.pow_u(unsigned(i)).floor_int() == expected[i]);
    }
    CHECK(QuadraticValue(Rational(-7, 2)).floor_int() == -4);
    CHECK((-QuadraticValue::sqrt_two()).floor_int() == -2);
    CHECK(QuadraticValue(Rational(-1), Rational(1)).floor_int() == 0);  // sqrt2 - 1
}

TEST_CASE("floor agrees with long-double evaluation away from ties") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        i64 an = i64(rng() % 2001) - 1000, ad = i64(rng() % 50) + 1;
        i64 bn = i64(rng() % 2001) - 1000, bd = i64(rng() % 50) + 1;
        QuadraticValue x{Rational(an, ad), Rational(bn, bd)};
        long double v = x.to_long_double();
        long double fl = std::floor(v);
        if (std::fabs(v - fl) > 1e-9L && std::fabs(v - (fl + 1)) > 1e-9L) {
            CHECK(x.floor_int() == i64(fl));
        }
    }
}

TEST_CASE("rational_below stays below and close") {
    QuadraticValue x = QuadraticValue::silver_ratio() * QuadraticValue(Rational(1201));
    Rational r = rational_below(x, 40);
    CHECK(QuadraticValue(r) <= x);
    CHECK(QuadraticValue(r + Rational(1, i64(1) << 20)) > x);
}

TEST_CASE("isqrt on word boundaries") {
    CHECK(isqrt_u128(0) == 0);
    CHECK(isqrt_u128(1) == 1);
    CHECK(isqrt_u128(2) == 1);
    CHECK(isqrt_u128(4) == 2);
    u128 big = (u128(1) << 100) - 1;
    u128 r = isqrt_u128(big);
    CHECK(r * r <= big);
    CHECK((r + 1) * (r + 1) > big);
}
