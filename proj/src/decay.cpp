#include "retal/decay.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace retal::decay {

namespace {
const Rational kZero(0);
const Rational kOne(1);
}

DecayFn DecayFn::linear(const Rational& gamma) {
    if (!(gamma > kZero) || gamma > kOne)
        throw std::invalid_argument("linear decay: gamma must be in (0, 1]");
    DecayFn fn;
    fn.kind_ = Kind::Linear;
    fn.param_ = gamma;
    return fn;
}

DecayFn DecayFn::geometric(const Rational& delta) {
    if (!(delta > kZero) || !(delta < kOne))
        throw std::invalid_argument("geometric decay: delta must be in (0, 1)");
    DecayFn fn;
    fn.kind_ = Kind::Geometric;
    fn.param_ = delta;
    return fn;
}

DecayFn DecayFn::table(std::vector<Rational> values) {
    if (values.empty() || values.front() != kOne)
        throw std::invalid_argument("table decay: first value must be 1");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < kZero || values[i] > kOne)
            throw std::invalid_argument("table decay: values must lie in [0, 1]");
        if (i > 0) {
            if (values[i] > values[i - 1])
                throw std::invalid_argument("table decay: values must be decreasing");
            if (values[i] == values[i - 1] && values[i] != kZero)
                throw std::invalid_argument(
                    "table decay: values must strictly decrease until reaching 0");
        }
    }
    DecayFn fn;
    fn.kind_ = Kind::Table;
    fn.values_ = std::move(values);
    return fn;
}

const Rational& DecayFn::gamma() const {
    if (kind_ != Kind::Linear) throw std::logic_error("decay: not linear");
    return param_;
}
const Rational& DecayFn::delta() const {
    if (kind_ != Kind::Geometric) throw std::logic_error("decay: not geometric");
    return param_;
}
const std::vector<Rational>& DecayFn::values() const {
    if (kind_ != Kind::Table) throw std::logic_error("decay: not table");
    return values_;
}

Scalar DecayFn::at(std::int64_t t) const {
    if (t < 0) throw std::domain_error("decay: negative time");
    switch (kind_) {
        case Kind::Linear: {
            Rational v = kOne - param_ * Rational(t);
            return Scalar(v < kZero ? kZero : v);
        }
        case Kind::Geometric:
            return Scalar::approx(std::pow(1.0 - param_.to_double(), (double)t));
        case Kind::Table: {
            if (t < (std::int64_t)values_.size()) return Scalar(values_[t]);
            if (values_.back() == kZero) return Scalar(kZero);
            throw std::domain_error("decay table exhausted before time " + std::to_string(t));
        }
    }
    throw std::logic_error("decay: bad kind");
}

Scalar DecayFn::at_real(const Scalar& t) const {
    if (t < Scalar(0)) throw std::domain_error("decay: negative time");
    switch (kind_) {
        case Kind::Linear: {
            if (t.exact()) {
                Rational v = kOne - param_ * t.rat();
                return Scalar(v < kZero ? kZero : v);
            }
            double v = 1.0 - param_.to_double() * t.dbl();
            return Scalar::approx(v < 0.0 ? 0.0 : v);
        }
        case Kind::Geometric:
            return Scalar::approx(std::pow(1.0 - param_.to_double(), t.dbl()));
        case Kind::Table: {
            if (!t.exact() || !t.rat().is_integer())
                throw std::domain_error("table decay is defined at integer times only");
            return at(t.rat().num());
        }
    }
    throw std::logic_error("decay: bad kind");
}

Scalar DecayFn::inverse(const Rational& y) const {
    if (y < kZero || y > kOne)
        throw std::domain_error("decay inverse: value outside [0, 1]");
    if (y == kOne) return Scalar(0);
    switch (kind_) {
        case Kind::Linear:
            // y = 0 is first attained exactly at the clamp point 1/gamma
            return Scalar((kOne - y) / param_);
        case Kind::Geometric: {
            if (y == kZero)
                throw std::domain_error("decay inverse: geometric decay never reaches 0");
            return Scalar::approx(std::log(y.to_double()) /
                                  std::log(1.0 - param_.to_double()));
        }
        case Kind::Table: {
            for (std::size_t i = 0; i < values_.size(); ++i)
                if (values_[i] == y) return Scalar((std::int64_t)i);
            throw std::domain_error("decay inverse: value not attained by table");
        }
    }
    throw std::logic_error("decay: bad kind");
}

std::optional<Scalar> DecayFn::first_at_or_below(const Rational& y) const {
    if (y < kZero) return std::nullopt;
    if (y >= kOne) return Scalar(0);
    switch (kind_) {
        case Kind::Linear:
            return Scalar((kOne - y) / param_);
        case Kind::Geometric: {
            if (y == kZero) return std::nullopt;
            return Scalar::approx(std::log(y.to_double()) /
                                  std::log(1.0 - param_.to_double()));
        }
        case Kind::Table: {
            for (std::size_t i = 0; i < values_.size(); ++i)
                if (values_[i] <= y) return Scalar((std::int64_t)i);
            return std::nullopt;
        }
    }
    throw std::logic_error("decay: bad kind");
}

std::string DecayFn::to_config_string() const {
    switch (kind_) {
        case Kind::Linear: return "linear(" + param_.to_string() + ")";
        case Kind::Geometric: return "geometric(" + param_.to_string() + ")";
        case Kind::Table: {
            std::string s = "table(";
            for (std::size_t i = 0; i < values_.size(); ++i) {
                if (i) s += ",";
                s += values_[i].to_string();
            }
            return s + ")";
        }
    }
    throw std::logic_error("decay: bad kind");
}

DecayFn DecayFn::parse(const std::string& text) {
    auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')')
        throw std::invalid_argument("decay: expected linear(...), geometric(...) or table(...)");
    std::string name = text.substr(0, open);
    std::string args = text.substr(open + 1, text.size() - open - 2);
    if (name == "linear") return linear(Rational::parse(args));
    if (name == "geometric") return geometric(Rational::parse(args));
    if (name == "table") {
        std::vector<Rational> vals;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ','))
            vals.push_back(Rational::parse(item));
        return table(std::move(vals));
    }
    throw std::invalid_argument("decay: unknown family '" + name + "'");
}

bool operator==(const DecayFn& a, const DecayFn& b) {
    return a.kind_ == b.kind_ && a.param_ == b.param_ && a.values_ == b.values_;
}

BreakEvenTimes break_even_times(const Rational& v, const Rational& c, const Rational& r,
                                const DecayFn& fn) {
    if (!(v > kZero)) throw std::invalid_argument("break-even: v must be positive");
    if (!(c > kZero)) throw std::invalid_argument("break-even: c must be positive");
    if (!(r > kZero)) throw std::invalid_argument("break-even: r must be positive");
    if (c >= v)
        throw std::domain_error("game never starts: cost of attack is at least the contested value");

    BreakEvenTimes out;
    auto t_att = fn.first_at_or_below(c / v);
    if (!t_att)
        throw std::domain_error("decay never reaches the attacker break-even point");
    out.attacker = *t_att;

    Rational yd = (c - r) / v;
    out.defender = fn.first_at_or_below(yd);
    return out;
}

std::int64_t parity_floor(const Scalar& x, Parity parity) {
    if (parity == Parity::Odd && x < Scalar(1))
        throw std::domain_error("parity floor: no odd integer at or below values < 1");
    if (x < Scalar(0)) throw std::domain_error("parity floor: negative input");
    std::int64_t f = x.floor_snapped();
    bool want_odd = parity == Parity::Odd;
    if ((f % 2 != 0) != want_odd) --f;
    return f;
}

}  // namespace retal::decay
