#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace retal {

/// Exact rational number over 64-bit integers.
///
/// All money and game-value arithmetic in this project is exact; any
/// intermediate that would leave the 64-bit range throws std::overflow_error
/// instead of silently wrapping. Values are kept normalized (gcd-reduced,
/// denominator > 0).
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        __int128 nn = n, dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        assign_reduced(nn, dd);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

    Rational operator-() const { return Rational(unchecked{}, -num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from128(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational: division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// Largest integer <= value.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    /// Smallest integer >= value.
    std::int64_t ceil() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    double to_double() const { return (double)num_ / (double)den_; }

    /// Exact decimal string when the reduced denominator is of the form
    /// 2^a * 5^b; otherwise falls back to "num/den". Never uses scientific
    /// notation, so output is stable for golden files.
    std::string to_string() const {
        std::int64_t d = den_;
        int twos = 0, fives = 0;
        while (d % 2 == 0) { d /= 2; ++twos; }
        while (d % 5 == 0) { d /= 5; ++fives; }
        if (d != 1)
            return std::to_string(num_) + "/" + std::to_string(den_);
        if (den_ == 1) return std::to_string(num_);
        int k = twos > fives ? twos : fives;
        // scale numerator to denominator 10^k
        __int128 scaled = num_;
        for (int i = 0; i < k - twos; ++i) scaled *= 2;
        for (int i = 0; i < k - fives; ++i) scaled *= 5;
        bool neg = scaled < 0;
        if (neg) scaled = -scaled;
        std::string digits;
        if (scaled == 0) digits = "0";
        while (scaled > 0) {
            digits.insert(digits.begin(), char('0' + (int)(scaled % 10)));
            scaled /= 10;
        }
        while ((int)digits.size() <= k) digits.insert(digits.begin(), '0');
        digits.insert(digits.end() - k, '.');
        // trim trailing zeros of the fraction part
        while (digits.back() == '0') digits.pop_back();
        if (digits.back() == '.') digits.pop_back();
        return (neg ? "-" : "") + digits;
    }

    /// Parses "123", "-4.25", "1/3", and exponent forms like "1e9", "2.5e-3".
    static Rational parse(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("rational: empty string");
        auto slash = s.find('/');
        if (slash != std::string_view::npos) {
            Rational n = parse(s.substr(0, slash));
            Rational d = parse(s.substr(slash + 1));
            return n / d;
        }
        std::size_t i = 0;
        bool neg = false;
        if (s[i] == '+' || s[i] == '-') { neg = s[i] == '-'; ++i; }
        __int128 mant = 0;
        int frac_digits = 0, ndigits = 0;
        bool seen_point = false;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c == '.') {
                if (seen_point) throw std::invalid_argument("rational: bad number");
                seen_point = true;
            } else if (c >= '0' && c <= '9') {
                mant = mant * 10 + (c - '0');
                if (mant > (__int128)std::numeric_limits<std::int64_t>::max() * 1000)
                    throw std::overflow_error("rational: literal too large");
                if (seen_point) ++frac_digits;
                ++ndigits;
            } else if (c == 'e' || c == 'E') {
                break;
            } else {
                throw std::invalid_argument("rational: bad character in number");
            }
        }
        if (ndigits == 0) throw std::invalid_argument("rational: no digits");
        int exp10 = 0;
        if (i < s.size()) {  // exponent part
            ++i;
            bool eneg = false;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) { eneg = s[i] == '-'; ++i; }
            if (i == s.size()) throw std::invalid_argument("rational: bad exponent");
            for (; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("rational: bad exponent");
                exp10 = exp10 * 10 + (s[i] - '0');
                if (exp10 > 40) throw std::overflow_error("rational: exponent too large");
            }
            if (eneg) exp10 = -exp10;
        }
        if (neg) mant = -mant;
        int net = exp10 - frac_digits;
        __int128 n = mant, d = 1;
        for (; net > 0; --net) n *= 10;
        for (; net < 0; ++net) d *= 10;
        return from128(n, d);
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

private:
    struct unchecked {};
    Rational(unchecked, std::int64_t n, std::int64_t d) : num_(n), den_(d) {}

    static Rational from128(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        Rational r;
        r.assign_reduced(n, d);
        return r;
    }

    void assign_reduced(__int128 n, __int128 d) {
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
        constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("rational: value out of 64-bit range");
        num_ = (std::int64_t)n;
        den_ = (std::int64_t)d;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational operator+(std::int64_t a, const Rational& b) { return Rational(a) + b; }
inline Rational operator-(std::int64_t a, const Rational& b) { return Rational(a) - b; }
inline Rational operator*(std::int64_t a, const Rational& b) { return Rational(a) * b; }

}  // namespace retal
