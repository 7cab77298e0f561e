#include "retal/econ.hpp"

#include <sstream>
#include <stdexcept>

namespace retal::econ {

namespace {
const Rational kZero(0);
const Rational kOne(1);
}

MarketImpactFn MarketImpactFn::constant(const Rational& value) {
    if (value < kZero) throw std::invalid_argument("market impact: constant must be >= 0");
    MarketImpactFn fn;
    fn.kind_ = Kind::Constant;
    fn.param_ = value;
    return fn;
}

MarketImpactFn MarketImpactFn::linear(const Rational& slope) {
    if (slope < kZero) throw std::invalid_argument("market impact: slope must be >= 0");
    MarketImpactFn fn;
    fn.kind_ = Kind::Linear;
    fn.param_ = slope;
    return fn;
}

MarketImpactFn MarketImpactFn::table(std::vector<std::pair<Rational, Rational>> points) {
    if (points.empty()) throw std::invalid_argument("market impact: empty table");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].first < kZero || points[i].second < kZero)
            throw std::invalid_argument("market impact: table entries must be >= 0");
        if (i > 0) {
            if (!(points[i].first > points[i - 1].first))
                throw std::invalid_argument("market impact: beta column must strictly increase");
            if (points[i].second < points[i - 1].second)
                throw std::invalid_argument("market impact: kappa column must weakly increase");
        }
    }
    MarketImpactFn fn;
    fn.kind_ = Kind::Table;
    fn.points_ = std::move(points);
    return fn;
}

Rational MarketImpactFn::at(const Rational& beta) const {
    if (beta < kZero) throw std::domain_error("market impact: beta must be >= 0");
    switch (kind_) {
        case Kind::Constant: return param_;
        case Kind::Linear: return param_ * beta;
        case Kind::Table: {
            Rational value(0);
            for (const auto& [b, k] : points_) {
                if (b > beta) break;
                value = k;
            }
            return value;
        }
    }
    throw std::logic_error("market impact: bad kind");
}

std::string MarketImpactFn::to_config_string() const {
    switch (kind_) {
        case Kind::Constant: return "constant(" + param_.to_string() + ")";
        case Kind::Linear: return "linear(" + param_.to_string() + ")";
        case Kind::Table: {
            std::string s = "table(";
            for (std::size_t i = 0; i < points_.size(); ++i) {
                if (i) s += ",";
                s += points_[i].first.to_string() + ":" + points_[i].second.to_string();
            }
            return s + ")";
        }
    }
    throw std::logic_error("market impact: bad kind");
}

MarketImpactFn MarketImpactFn::parse(const std::string& text) {
    auto open = text.find('(');
    if (open == std::string::npos) {
        // bare number means a constant impact
        return constant(Rational::parse(text));
    }
    if (text.back() != ')')
        throw std::invalid_argument("market impact: unterminated '" + text + "'");
    std::string name = text.substr(0, open);
    std::string args = text.substr(open + 1, text.size() - open - 2);
    if (name == "constant") return constant(Rational::parse(args));
    if (name == "linear") return linear(Rational::parse(args));
    if (name == "table") {
        std::vector<std::pair<Rational, Rational>> pts;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("market impact table: expected beta:kappa pairs");
            pts.emplace_back(Rational::parse(item.substr(0, colon)),
                             Rational::parse(item.substr(colon + 1)));
        }
        return table(std::move(pts));
    }
    throw std::invalid_argument("market impact: unknown form '" + name + "'");
}

void EconParams::validate() const {
    if (!(block_reward_pb > kZero))
        throw std::invalid_argument("econ: block reward must be positive");
    if (!(honest_hashpower_n > kZero))
        throw std::invalid_argument("econ: honest hashpower must be positive");
    if (!(hash_cost_ch > kZero))
        throw std::invalid_argument("econ: hash cost must be positive");
    if (beta < kZero)
        throw std::invalid_argument("econ: beta must be >= 0");
    if (escrow_e < 1)
        throw std::invalid_argument("econ: escrow must be a positive number of blocks");
    if (!(tx_value_v > kZero))
        throw std::invalid_argument("econ: transaction value must be positive");
    if (delta < kZero || delta > kOne)
        throw std::invalid_argument("econ: delta must lie in [0, 1]");
    // spot-check the impact function on a coarse beta grid
    Rational prev(-1);
    for (int i = 0; i <= 16; ++i) {
        Rational b = Rational(i, 4);
        Rational k = kappa.at(b);
        if (k < kZero) throw std::invalid_argument("econ: kappa must be >= 0");
        if (i > 0 && k < prev)
            throw std::invalid_argument("econ: kappa must be weakly increasing in beta");
        prev = k;
    }
}

Rational free_entry_hashpower(const Rational& pb, const Rational& ch) {
    if (!(pb > kZero)) throw std::domain_error("free entry: block reward must be positive");
    if (!(ch > kZero)) throw std::domain_error("free entry: hash cost must be positive");
    return pb / ch;
}

AttackCostBreakdown net_attack_cost(const EconParams& params) {
    params.validate();
    if (params.beta <= kOne)
        throw std::domain_error("majority required: attack needs beta > 1");
    Rational k = params.kappa.at(params.beta);
    Rational e(params.escrow_e);
    AttackCostBreakdown out;
    out.rental_cost = (kOne + k) * e * params.honest_hashpower_n * params.hash_cost_ch;
    out.mining_revenue = (kOne - params.delta) * e * params.block_reward_pb;
    out.net_cost = out.rental_cost - out.mining_revenue;
    out.duration_honest_block_times = e / params.beta;
    return out;
}

Profitability attack_profitability(const EconParams& params) {
    AttackCostBreakdown cost = net_attack_cost(params);
    Profitability out;
    out.profit = params.tx_value_v - cost.net_cost;
    out.profitable = out.profit > kZero;
    Rational kd = params.kappa.at(params.beta) + params.delta;
    if (kd > kZero)
        out.safe_pb_threshold = params.tx_value_v / (kd * Rational(params.escrow_e));
    return out;
}

}  // namespace retal::econ
