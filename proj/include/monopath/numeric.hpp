#pragma once

#include <cstdint>
#include <cstdlib>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "monopath/errors.hpp"

namespace monopath {

using i64 = std::int64_t;
using i128 = __int128;
using u128 = unsigned __int128;

struct OverflowError : std::overflow_error {
    explicit OverflowError(const std::string& msg) : std::overflow_error(msg) {}
};

inline i64 checked_narrow(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) throw OverflowError("value exceeds 64-bit range");
    return static_cast<i64>(v);
}

inline i64 checked_add(i64 a, i64 b) { return checked_narrow(i128(a) + i128(b)); }
inline i64 checked_sub(i64 a, i64 b) { return checked_narrow(i128(a) - i128(b)); }
inline i64 checked_mul(i64 a, i64 b) { return checked_narrow(i128(a) * i128(b)); }

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// Exact integer square root: largest r with r*r <= v.
inline u128 isqrt_u128(u128 v) {
    if (v == 0) return 0;
    u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v && (r + 1) != 0) ++r;
    return r;
}

// Sign of x*x - 2*y*y for nonnegative x, y without overflowing 128 bits.
// Splits each square into 64-bit words and compares the 256-bit results.
inline int cmp_square_vs_twice_square(u128 x, u128 y) {
    auto square_words = [](u128 v, u128 out[2]) {
        u128 lo = v & 0xFFFFFFFFFFFFFFFFULL;
        u128 hi = v >> 64;
        u128 ll = lo * lo;
        u128 cross = hi * lo;  // needs to be shifted by 64, doubled
        u128 hh = hi * hi;     // shifted by 128
        out[0] = ll;
        out[1] = hh;
        // add 2*cross << 64 with carries
        u128 cross_lo = (cross << 64);
        u128 cross_hi = (cross >> 64);
        for (int rep = 0; rep < 2; ++rep) {
            u128 before = out[0];
            out[0] += cross_lo;
            if (out[0] < before) out[1] += 1;
            out[1] += cross_hi;
        }
    };
    u128 sx[2], sy[2];
    square_words(x, sx);
    square_words(y, sy);
    // double sy
    u128 carry = (sy[0] >> 127) & 1;
    sy[0] <<= 1;
    sy[1] = (sy[1] << 1) | carry;
    if (sx[1] != sy[1]) return sx[1] < sy[1] ? -1 : 1;
    if (sx[0] != sy[0]) return sx[0] < sy[0] ? -1 : 1;
    return 0;
}

// Exact rational with 64-bit numerator/denominator. All arithmetic is checked:
// anything that leaves the representable range throws OverflowError instead of
// wrapping.
struct Rational {
    i64 num = 0;
    i64 den = 1;  // > 0, gcd(|num|, den) == 1

    Rational() = default;
    Rational(i64 n) : num(n), den(1) {}
    Rational(i64 n, i64 d) {
        if (d == 0) throw PreconditionError("rational with zero denominator");
        i128 nn = n, dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        i128 g = gcd128(nn, dd);
        if (g > 1) { nn /= g; dd /= g; }
        num = checked_narrow(nn);
        den = checked_narrow(dd);
    }

    static Rational from128(i128 n, i128 d) {
        if (d == 0) throw PreconditionError("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num = checked_narrow(n);
        r.den = checked_narrow(d);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num) * b.num, i128(a.den) * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw PreconditionError("division by zero rational");
        return from128(i128(a.num) * b.den, i128(a.den) * b.num);
    }
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }
    Rational& operator+=(const Rational& b) { *this = *this + b; return *this; }
    Rational& operator-=(const Rational& b) { *this = *this - b; return *this; }
    Rational& operator*=(const Rational& b) { *this = *this * b; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num) * b.den < i128(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }
    bool is_integer() const { return den == 1; }

    i64 floor() const {
        if (num >= 0) return num / den;
        return -(( -i128(num) + den - 1) / den);
    }
    i64 ceil() const { return -(-*this).floor(); }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    long double to_long_double() const {
        return static_cast<long double>(num) / static_cast<long double>(den);
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Accepts "p/q", plain integers, and decimal literals like "0.05".
    static Rational parse(const std::string& text);
};

inline Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw PreconditionError("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            i64 n = std::stoll(text.substr(0, slash));
            i64 d = std::stoll(text.substr(slash + 1));
            return Rational(n, d);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(std::stoll(text));
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (frac.empty()) return Rational(std::stoll(whole));
        bool neg = !whole.empty() && whole[0] == '-';
        i64 w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
        i64 f = std::stoll(frac);
        if (f < 0) throw PreconditionError("malformed decimal literal: " + text);
        i64 scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale = checked_mul(scale, 10);
        Rational r = Rational(std::llabs(w)) + Rational(f, scale);
        return neg ? -r : r;
    } catch (const std::invalid_argument&) {
        throw PreconditionError("malformed rational literal: " + text);
    } catch (const std::out_of_range&) {
        throw PreconditionError("rational literal out of range: " + text);
    }
}

}  // namespace monopath
