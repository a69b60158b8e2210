#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "czint/errors.hpp"

namespace czint {

// Exact rational arithmetic on 64-bit integers.  All invariant computations
// in this library go through this type; floating point never enters an
// exactness-sensitive path.  Intermediates are widened to 128 bits and any
// result that does not fit back into 64 bits raises ArithmeticOverflow.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    // Greatest integer <= value.
    long long floor() const {
        if (num_ >= 0) return num_ / den_;
        return -((-num_ + den_ - 1) / den_);
    }

    long long ceil() const { return -(-*this).floor(); }

    // Fractional part, always in [0, 1).
    Rational frac() const { return *this - Rational(floor()); }

    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_, raw_tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) fail(Errc::invalid_argument, "rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const { return double(num_) / double(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    using i128 = __int128;
    struct raw_tag {};
    Rational(long long n, long long d, raw_tag) : num_(n), den_(d) {}

    static Rational make(i128 n, i128 d) {
        if (d == 0) fail(Errc::invalid_argument, "zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            fail(Errc::arithmetic_overflow, "rational exceeds 64-bit range");
        return Rational((long long)n, (long long)d, raw_tag{});
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) fail(Errc::invalid_argument, "zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_;
    long long den_;
};

inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }

// Conversion that asserts exact integrality of a rational quantity.
inline long long rat_to_integer(const Rational& r, Errc code, const char* what) {
    if (!r.is_integer()) fail(code, std::string(what) + " is not an integer: " + r.str());
    return r.num();
}

// Overflow-checked integer product, used where formulas multiply
// multiplicities and windings outside of Rational.
inline long long mul_ll(long long a, long long b) {
    __int128 p = (__int128)a * b;
    if (p > INT64_MAX || p < INT64_MIN) fail(Errc::arithmetic_overflow, "integer product overflow");
    return (long long)p;
}

} // namespace czint
