#include "retal/game.hpp"

#include <sstream>
#include <stdexcept>

namespace retal::game {

namespace {
const Rational kZero(0);
const Rational kOne(1);
}

void GameParams::validate() const {
    if (!(v > kZero)) throw std::invalid_argument("game: v must be positive");
    if (!(c > kZero)) throw std::invalid_argument("game: c must be positive");
    if (c >= v)
        throw std::domain_error("game never starts: cost of attack is at least the contested value");
    if (!(r > kZero)) throw std::invalid_argument("game: r must be positive");
}

decay::BreakEvenTimes GameParams::break_even() const {
    validate();
    return decay::break_even_times(v, c, r, decay);
}

void StrategyProfile::validate() const {
    if (probs.empty()) throw std::invalid_argument("profile: must have at least one entry");
    for (const auto& p : probs)
        if (p < kZero || p > kOne)
            throw std::invalid_argument("profile: probabilities must lie in [0, 1]");
}

bool StrategyProfile::degenerate() const {
    for (const auto& p : probs)
        if (p != kZero && p != kOne) return false;
    return true;
}

Rational StrategyProfile::at(std::int64_t t) const {
    if (t < 0) throw std::domain_error("profile: negative time");
    return t < (std::int64_t)probs.size() ? probs[t] : kZero;
}

std::string StrategyProfile::to_json_array() const {
    std::string s = "[";
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (i) s += ",";
        s += "\"" + probs[i].to_string() + "\"";
    }
    return s + "]";
}

StrategyProfile StrategyProfile::parse_json_array(const std::string& text) {
    StrategyProfile out;
    std::string body = text;
    auto first = body.find('[');
    auto last = body.rfind(']');
    if (first == std::string::npos || last == std::string::npos || last < first)
        throw std::invalid_argument("profile: expected a JSON array like [0,1,0.5]");
    body = body.substr(first + 1, last - first - 1);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string trimmed;
        for (char ch : item)
            if (ch != ' ' && ch != '"' && ch != '\t' && ch != '\n') trimmed += ch;
        if (trimmed.empty()) continue;
        out.probs.push_back(Rational::parse(trimmed));
    }
    out.validate();
    return out;
}

std::pair<Scalar, Scalar> terminal_payoffs(const GameParams& g, Player quitter, std::int64_t t) {
    g.validate();
    if (t < 0) throw std::domain_error("terminal payoffs: negative time");
    if (mover_at(t) != quitter)
        throw std::invalid_argument("terminal payoffs: quitter/parity mismatch (attacker quits "
                                    "at even t, defender at odd t)");
    Scalar value = g.decay.at(t) * Scalar(g.v);
    Scalar c(g.c);
    if (quitter == Player::Attacker) {
        Scalar k(Rational(t / 2));
        return {-(k * c), value - k * c};
    }
    Scalar ka(Rational((t + 1) / 2));  // attacks paid for by the attacker so far
    Scalar kd(Rational((t - 1) / 2));  // attacks paid for by the defender so far
    return {value - ka * c, -Scalar(g.r) - kd * c};
}

std::int64_t truncation_horizon(const GameParams& g) {
    auto times = g.break_even();
    Scalar t_min = times.attacker;
    if (times.defender && *times.defender < t_min) t_min = *times.defender;
    return t_min.floor_snapped() + 1;
}

StrategyProfile deterrent_profile(const GameParams& g) {
    auto times = g.break_even();
    std::int64_t horizon = truncation_horizon(g);
    StrategyProfile sigma;
    sigma.probs.reserve(horizon + 1);
    for (std::int64_t t = 0; t <= horizon; ++t) {
        bool fight = false;
        if (t % 2 == 1)
            fight = !times.defender || Scalar(Rational(t)) <= *times.defender;
        sigma.probs.push_back(fight ? kOne : kZero);
    }
    return sigma;
}

std::pair<Scalar, Scalar> expected_utilities(const GameParams& g, const StrategyProfile& sigma) {
    g.validate();
    sigma.validate();
    std::int64_t len = (std::int64_t)sigma.probs.size();
    Scalar eu_a(Rational(0)), eu_d(Rational(0));
    Scalar reach(kOne);
    for (std::int64_t t = 0; t <= len; ++t) {
        Rational p = t < len ? sigma.probs[t] : kZero;  // forced quit at the end
        Rational quit = kOne - p;
        if (quit != kZero) {
            auto [pa, pd] = terminal_payoffs(g, mover_at(t), t);
            Scalar w = reach * Scalar(quit);
            eu_a = eu_a + w * pa;
            eu_d = eu_d + w * pd;
        }
        if (p == kZero) break;  // nothing beyond the first sure quit is reached
        reach = reach * Scalar(p);
    }
    return {eu_a, eu_d};
}

}  // namespace retal::game
