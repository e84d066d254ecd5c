#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sublis {

// Exact rational on int64 with __int128 intermediates. Denominator > 0 always;
// stored reduced. Magnitudes in this codebase stay small (numerators bounded by
// n * 4096-ish), so int64 after reduction is plenty; overflow in a reduced
// result throws rather than wrapping.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    void assign(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational: overflow after reduction");
        num = static_cast<std::int64_t>(n);
        den = static_cast<std::int64_t>(d);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        r.assign((__int128)a.num * b.den + (__int128)b.num * a.den,
                 (__int128)a.den * b.den);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        r.assign((__int128)a.num * b.den - (__int128)b.num * a.den,
                 (__int128)a.den * b.den);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        r.assign((__int128)a.num * b.num, (__int128)a.den * b.den);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("rational: divide by zero");
        Rational r;
        r.assign((__int128)a.num * b.den, (__int128)a.den * b.num);
        return r;
    }
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den <= (__int128)b.num * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool is_integer() const { return den == 1; }

    // Smallest integer >= value.
    std::int64_t ceil() const {
        std::int64_t q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return q;
    }
    // Largest integer <= value.
    std::int64_t floor() const {
        std::int64_t q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Nearest rational with denominator `snap_den` (ties toward +inf); used to keep
// derived parameters exactly representable and ledger keys canonical.
inline Rational snap(double v, std::int64_t snap_den = 4096) {
    long double scaled = static_cast<long double>(v) * snap_den;
    long double rounded = scaled >= 0 ? (long double)(std::int64_t)(scaled + 0.5L)
                                      : -(long double)(std::int64_t)(-scaled + 0.5L);
    return Rational(static_cast<std::int64_t>(rounded), snap_den);
}

// Parse a decimal string ("0.25", "2", "1e-3" not supported) to an exact rational.
inline Rational parse_decimal(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty decimal");
    std::size_t pos = 0;
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') { neg = s[pos] == '-'; ++pos; }
    __int128 num = 0, den = 1;
    bool saw_digit = false, saw_dot = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c == '.') {
            if (saw_dot) throw std::invalid_argument("bad decimal: " + s);
            saw_dot = true;
        } else if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            if (saw_dot) den *= 10;
            saw_digit = true;
            if (den > (__int128)1e18) throw std::invalid_argument("decimal too precise: " + s);
        } else {
            throw std::invalid_argument("bad decimal: " + s);
        }
    }
    if (!saw_digit) throw std::invalid_argument("bad decimal: " + s);
    Rational r;
    r.assign(neg ? -num : num, den);
    return r;
}

}  // namespace sublis
