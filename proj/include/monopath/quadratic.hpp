#pragma once

#include <cmath>
#include <string>

#include "monopath/numeric.hpp"

namespace monopath {

// Exact element a + b*sqrt(2) of the quadratic field Q(sqrt 2). Sign tests,
// comparisons, and floors are decided without rounding, so block sizes and
// density thresholds computed from these values are exact.
struct QuadraticValue {
    Rational a;  // rational part
    Rational b;  // coefficient of sqrt(2)

    QuadraticValue() = default;
    QuadraticValue(Rational rational_part) : a(rational_part), b(0) {}
    QuadraticValue(i64 integer_part) : a(integer_part), b(0) {}
    QuadraticValue(Rational rational_part, Rational sqrt2_part) : a(rational_part), b(sqrt2_part) {}

    static QuadraticValue sqrt_two() { return QuadraticValue(Rational(0), Rational(1)); }
    // 1 + sqrt(2), the block growth rate minimizing the path density bound.
    static QuadraticValue silver_ratio() { return QuadraticValue(Rational(1), Rational(1)); }

    bool is_rational() const { return b.num == 0; }

    friend QuadraticValue operator+(const QuadraticValue& x, const QuadraticValue& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend QuadraticValue operator-(const QuadraticValue& x, const QuadraticValue& y) {
        return {x.a - y.a, x.b - y.b};
    }
    QuadraticValue operator-() const { return {-a, -b}; }
    friend QuadraticValue operator*(const QuadraticValue& x, const QuadraticValue& y) {
        return {x.a * y.a + Rational(2) * (x.b * y.b), x.a * y.b + x.b * y.a};
    }
    friend QuadraticValue operator/(const QuadraticValue& x, const QuadraticValue& y) {
        // multiply by the conjugate; the field norm a^2 - 2 b^2 vanishes only at 0
        Rational norm = y.a * y.a - Rational(2) * (y.b * y.b);
        if (norm.num == 0) throw PreconditionError("division by zero quadratic value");
        QuadraticValue conj{y.a, -y.b};
        QuadraticValue t = x * conj;
        return {t.a / norm, t.b / norm};
    }

    QuadraticValue pow_u(unsigned e) const {
        QuadraticValue result(Rational(1));
        QuadraticValue base = *this;
        while (e > 0) {
            if (e & 1u) result = result * base;
            base = base * base;
            e >>= 1u;
        }
        return result;
    }

    int sign() const {
        int sa = a.sign(), sb = b.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa > 0 && sb > 0) return 1;
        if (sa < 0 && sb < 0) return -1;
        // opposite signs: compare a^2 against 2 b^2 exactly
        u128 x = u128(i128(a.num < 0 ? -i128(a.num) : i128(a.num))) * u128(b.den);
        u128 y = u128(i128(b.num < 0 ? -i128(b.num) : i128(b.num))) * u128(a.den);
        int c = cmp_square_vs_twice_square(x, y);  // sign of |a|^2 - 2|b|^2 (cross-multiplied)
        if (c == 0) return 0;                      // impossible for b != 0, kept for safety
        return (c > 0) ? sa : sb;
    }

    friend bool operator==(const QuadraticValue& x, const QuadraticValue& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const QuadraticValue& x, const QuadraticValue& y) { return !(x == y); }
    friend bool operator<(const QuadraticValue& x, const QuadraticValue& y) {
        return (x - y).sign() < 0;
    }
    friend bool operator<=(const QuadraticValue& x, const QuadraticValue& y) {
        return (x - y).sign() <= 0;
    }
    friend bool operator>(const QuadraticValue& x, const QuadraticValue& y) { return y < x; }
    friend bool operator>=(const QuadraticValue& x, const QuadraticValue& y) { return y <= x; }

    // Largest integer m with m <= a + b*sqrt(2), computed exactly.
    i64 floor_int() const {
        i128 ad = a.den, bd = b.den;
        i128 g = gcd128(ad, bd);
        i128 common = ad / g * bd;  // lcm, fits well within 128 bits
        i128 A128 = i128(a.num) * (common / ad);
        i128 B128 = i128(b.num) * (common / bd);
        i64 A = checked_narrow(A128);
        i64 B = checked_narrow(B128);
        i64 D = checked_narrow(common);
        i64 whole;  // floor(A + B*sqrt(2))
        if (B == 0) {
            whole = A;
        } else if (B > 0) {
            u128 root = isqrt_u128(u128(2) * u128(B) * u128(B));
            whole = checked_add(A, checked_narrow(i128(root)));
        } else {
            u128 root = isqrt_u128(u128(2) * u128(-i128(B)) * u128(-i128(B)));
            // B*sqrt(2) is irrational here, so its floor is -(isqrt) - 1
            whole = checked_sub(A, checked_add(checked_narrow(i128(root)), 1));
        }
        // floor(v / D) == floor(floor(v) / D) for integer D > 0
        if (whole >= 0) return whole / D;
        return -((-i128(whole) + D - 1) / D);
    }

    long double to_long_double() const {
        return a.to_long_double() + b.to_long_double() * std::sqrt(2.0L);
    }
    double to_double() const { return static_cast<double>(to_long_double()); }

    std::string str() const {
        if (is_rational()) return a.str();
        return a.str() + " + " + b.str() + "*sqrt(2)";
    }
};

// Largest rational of the form m / 2^bits that does not exceed x.
inline Rational rational_below(const QuadraticValue& x, int bits) {
    QuadraticValue scaled = x * QuadraticValue(Rational(i64(1) << bits));
    return Rational(scaled.floor_int(), i64(1) << bits);
}

}  // namespace monopath
