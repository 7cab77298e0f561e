#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "retal/rational.hpp"
#include "retal/scalar.hpp"

namespace retal::decay {

/// Value-decay function phi(t): the fraction of the contested value that
/// remains after t completed attacks. phi(0) = 1, weakly decreasing, range
/// within [0,1].
///
/// Families:
///   linear(gamma):     phi(t) = max(1 - gamma*t, 0), 0 < gamma <= 1 (exact)
///   geometric(delta):  phi(t) = (1-delta)^t, 0 < delta < 1 (floating)
///   table(v0,v1,...):  explicit values at integer t, v0 = 1, strictly
///                      decreasing while positive; a trailing 0 extends to
///                      all later times.
class DecayFn {
public:
    enum class Kind { Linear, Geometric, Table };

    static DecayFn linear(const Rational& gamma);
    static DecayFn geometric(const Rational& delta);
    static DecayFn table(std::vector<Rational> values);

    Kind kind() const { return kind_; }
    /// Linear and Table evaluate exactly; Geometric uses doubles with the
    /// kFloatTol comparison band.
    bool exact() const { return kind_ != Kind::Geometric; }

    const Rational& gamma() const;
    const Rational& delta() const;
    const std::vector<Rational>& values() const;

    /// phi at integer time t >= 0.
    Scalar at(std::int64_t t) const;
    /// phi at real time (break-even interpolation). Table decays are defined
    /// at integer times only and reject everything else.
    Scalar at_real(const Scalar& t) const;

    /// Smallest t with phi(t) = y. Errors when y lies outside the attained
    /// range (Table: when y is skipped between steps).
    Scalar inverse(const Rational& y) const;

    /// Smallest t with phi(t) <= y, or nullopt when phi never gets that low.
    /// Coincides with inverse() on the continuous families; gives Table
    /// decays a total break-even rule.
    std::optional<Scalar> first_at_or_below(const Rational& y) const;

    /// Config-file syntax: linear(0.1), geometric(0.05), table(1,0.8,0.6).
    std::string to_config_string() const;
    static DecayFn parse(const std::string& text);

    friend bool operator==(const DecayFn& a, const DecayFn& b);

private:
    DecayFn() = default;
    Kind kind_ = Kind::Linear;
    Rational param_;                 // gamma or delta
    std::vector<Rational> values_;   // table entries
};

/// First times at which quitting is weakly better than fighting on.
/// defender is disengaged when the decay never falls far enough, i.e. the
/// defender is always willing to fight.
struct BreakEvenTimes {
    Scalar attacker;
    std::optional<Scalar> defender;
};

/// attacker: smallest t with phi(t)*v - c <= 0; defender: smallest t with
/// phi(t)*v - c <= -r, unbounded when unattainable. Requires 0 < c < v and
/// r > 0; c >= v means the game never starts.
BreakEvenTimes break_even_times(const Rational& v, const Rational& c, const Rational& r,
                                const DecayFn& fn);

enum class Parity { Even, Odd };

/// Largest integer of the requested parity that is <= x. Odd requires x >= 1,
/// even requires x >= 0.
std::int64_t parity_floor(const Scalar& x, Parity parity);

}  // namespace retal::decay
