#pragma once

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "retal/rational.hpp"

namespace retal {

/// Comparison tolerance for inexact (floating) values. Values closer than
/// this are treated as equal; ties then resolve by the caller's tie rule.
inline constexpr double kFloatTol = 1e-9;

/// Fixed-notation shortest round-trip formatting for doubles. No scientific
/// notation, so CLI/CSV output stays byte-stable.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, res.ptr);
}

/// A quantity that is exact (Rational) when the decay family permits and a
/// plain double otherwise. Exactness is sticky through arithmetic: mixing an
/// inexact operand makes the result inexact. Comparisons on inexact values
/// use the symmetric kFloatTol band.
class Scalar {
public:
    Scalar() : exact_(true), rat_(0), dbl_(0.0) {}
    Scalar(const Rational& r) : exact_(true), rat_(r), dbl_(r.to_double()) {}
    Scalar(std::int64_t n) : Scalar(Rational(n)) {}
    static Scalar approx(double d) {
        Scalar s;
        s.exact_ = false;
        s.rat_ = Rational(0);
        s.dbl_ = d;
        return s;
    }

    bool exact() const { return exact_; }
    double dbl() const { return dbl_; }
    const Rational& rat() const {
        if (!exact_) throw std::logic_error("scalar: inexact value has no rational form");
        return rat_;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return Scalar(a.rat_ + b.rat_);
        return approx(a.dbl_ + b.dbl_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return Scalar(a.rat_ - b.rat_);
        return approx(a.dbl_ - b.dbl_);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return Scalar(a.rat_ * b.rat_);
        return approx(a.dbl_ * b.dbl_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return Scalar(a.rat_ / b.rat_);
        return approx(a.dbl_ / b.dbl_);
    }
    Scalar operator-() const {
        return exact_ ? Scalar(-rat_) : approx(-dbl_);
    }

    /// Three-way comparison: -1, 0, +1. Exact when both sides are exact,
    /// tolerance-banded otherwise.
    friend int cmp(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) {
            if (a.rat_ < b.rat_) return -1;
            if (b.rat_ < a.rat_) return 1;
            return 0;
        }
        if (std::abs(a.dbl_ - b.dbl_) <= kFloatTol) return 0;
        return a.dbl_ < b.dbl_ ? -1 : 1;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) { return cmp(a, b) == 0; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return cmp(a, b) >= 0; }

    /// Largest integer <= value, snapping inexact values within tolerance of
    /// an integer onto it first.
    std::int64_t floor_snapped() const {
        if (exact_) return rat_.floor();
        double r = std::round(dbl_);
        if (std::abs(dbl_ - r) <= kFloatTol) return (std::int64_t)r;
        return (std::int64_t)std::floor(dbl_);
    }

    std::string to_string() const {
        return exact_ ? rat_.to_string() : format_double(dbl_);
    }

private:
    bool exact_;
    Rational rat_;
    double dbl_;
};

}  // namespace retal
