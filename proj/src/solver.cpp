#include "retal/solver.hpp"

#include <stdexcept>

namespace retal::solver {

namespace {

using game::mover_at;
using game::terminal_payoffs;

Scalar component(const std::pair<Scalar, Scalar>& pair, Player p) {
    return p == Player::Attacker ? pair.first : pair.second;
}

/// Terminal payoff pairs for every quit node t = 0 .. horizon+1.
std::vector<std::pair<Scalar, Scalar>> terminal_table(const GameParams& g, std::int64_t horizon) {
    std::vector<std::pair<Scalar, Scalar>> table;
    table.reserve(horizon + 2);
    for (std::int64_t t = 0; t <= horizon + 1; ++t)
        table.push_back(terminal_payoffs(g, mover_at(t), t));
    return table;
}

TerminalOutcome outcome_at(const std::vector<std::pair<Scalar, Scalar>>& terminals,
                           std::int64_t t) {
    TerminalOutcome out;
    out.quitter = mover_at(t);
    out.t = t;
    out.payoff_attacker = terminals[t].first;
    out.payoff_defender = terminals[t].second;
    return out;
}

}  // namespace

EquilibriumResult backward_induction(const GameParams& g) {
    EquilibriumResult res;
    res.times = g.break_even();
    res.horizon = game::truncation_horizon(g);
    const std::int64_t h = res.horizon;
    auto terminals = terminal_table(g, h);

    // Past the horizon the mover is one step beyond its break-even, so quit
    // is dominant there; that terminal seeds the recursion.
    std::pair<Scalar, Scalar> cont = terminals[h + 1];
    res.profile.probs.assign(h + 1, Rational(0));
    res.node_values.assign(h + 1, NodeValue{});
    for (std::int64_t t = h; t >= 0; --t) {
        Player m = mover_at(t);
        bool fight = cmp(component(cont, m), component(terminals[t], m)) > 0;
        if (!fight) cont = terminals[t];
        res.profile.probs[t] = Rational(fight ? 1 : 0);
        res.node_values[t] = NodeValue{t, m, fight, cont.first, cont.second};
    }

    std::int64_t quit_t = h + 1;
    for (std::int64_t t = 0; t <= h; ++t)
        if (res.profile.probs[t] == Rational(0)) { quit_t = t; break; }
    res.root_outcome = outcome_at(terminals, quit_t);
    res.attack_occurs = res.profile.probs[0] == Rational(1);
    return res;
}

DeviationReport one_deviation_check(const GameParams& g, const StrategyProfile& sigma) {
    sigma.validate();
    const std::int64_t h = game::truncation_horizon(g);
    auto terminals = terminal_table(g, h);

    // Continuation utilities under sigma, from each node down to the forced
    // quit one past the horizon.
    std::vector<std::pair<Scalar, Scalar>> under(h + 2);
    under[h + 1] = terminals[h + 1];
    for (std::int64_t t = h; t >= 0; --t) {
        Rational p = sigma.at(t);
        Scalar fight_w(p), quit_w(Rational(1) - p);
        under[t] = {fight_w * under[t + 1].first + quit_w * terminals[t].first,
                    fight_w * under[t + 1].second + quit_w * terminals[t].second};
    }

    DeviationReport report;
    for (std::int64_t t = 0; t <= h; ++t) {
        Player m = mover_at(t);
        Scalar u_now = component(under[t], m);
        Scalar u_fight = component(under[t + 1], m);
        Scalar u_quit = component(terminals[t], m);
        Scalar best = cmp(u_fight, u_quit) > 0 ? u_fight : u_quit;
        if (cmp(best, u_now) > 0) {
            Deviation d;
            d.t = t;
            d.player = m;
            d.current_p = sigma.at(t);
            d.better_p = Rational(cmp(u_fight, u_quit) > 0 ? 1 : 0);
            d.gain = best - u_now;
            report.push_back(d);
        }
    }
    return report;
}

EquilibriumResult brute_force_equilibrium(const GameParams& g, int max_horizon) {
    EquilibriumResult res;
    res.times = g.break_even();
    res.horizon = game::truncation_horizon(g);
    const std::int64_t h = res.horizon;
    if (h > max_horizon)
        throw std::domain_error("brute force: horizon " + std::to_string(h) +
                                " exceeds the limit of " + std::to_string(max_horizon));
    auto terminals = terminal_table(g, h);

    const std::int64_t n = h + 1;          // nodes 0..h
    const std::uint64_t total = 1ull << n;  // candidate degenerate profiles
    std::vector<std::int64_t> next_quit(n + 2);
    bool found = false;
    std::uint64_t found_mask = 0;

    for (std::uint64_t mask = 0; mask < total; ++mask) {
        // next_quit[t]: the node where play starting at t ends under this profile
        next_quit[n] = n;  // forced quit one past the horizon
        next_quit[n + 1] = n;
        for (std::int64_t t = n - 1; t >= 0; --t)
            next_quit[t] = (mask >> t) & 1 ? next_quit[t + 1] : t;

        bool consistent = true;
        for (std::int64_t t = 0; t < n && consistent; ++t) {
            Player m = mover_at(t);
            Scalar u_quit = component(terminals[t], m);
            Scalar u_fight = component(terminals[next_quit[t + 1]], m);
            bool should_fight = cmp(u_fight, u_quit) > 0;  // quit on ties
            if (should_fight != (((mask >> t) & 1) != 0)) consistent = false;
        }
        if (consistent) {
            if (found)
                throw std::logic_error("brute force: multiple equilibria under the tie rule");
            found = true;
            found_mask = mask;
        }
    }
    if (!found) throw std::logic_error("brute force: no equilibrium found");

    next_quit[n] = n;
    for (std::int64_t t = n - 1; t >= 0; --t)
        next_quit[t] = (found_mask >> t) & 1 ? next_quit[t + 1] : t;
    res.profile.probs.assign(n, Rational(0));
    res.node_values.assign(n, NodeValue{});
    for (std::int64_t t = 0; t < n; ++t) {
        bool fight = (found_mask >> t) & 1;
        res.profile.probs[t] = Rational(fight ? 1 : 0);
        const auto& v = terminals[next_quit[t]];
        res.node_values[t] = NodeValue{t, mover_at(t), fight, v.first, v.second};
    }
    res.root_outcome = outcome_at(terminals, next_quit[0]);
    res.attack_occurs = res.profile.probs[0] == Rational(1);
    return res;
}

Player last_profitable_mover(const GameParams& g) {
    auto times = g.break_even();
    if (!times.defender) return Player::Defender;
    if (*times.defender < Scalar(1)) return Player::Attacker;
    std::int64_t a_even = decay::parity_floor(times.attacker, decay::Parity::Even);
    std::int64_t d_odd = decay::parity_floor(*times.defender, decay::Parity::Odd);
    return a_even < d_odd ? Player::Defender : Player::Attacker;
}

SafetyReport reputation_safety(const GameParams& g) {
    g.validate();
    SafetyReport out;
    if (g.decay.kind() == decay::DecayFn::Kind::Linear) {
        Rational threshold = g.decay.gamma() * g.v;
        out.linear_threshold = threshold;
        out.linear_condition = g.r > threshold;
    }

    auto times = g.break_even();
    Scalar arg = times.attacker + Scalar(1);
    Scalar phi_val;
    switch (g.decay.kind()) {
        case decay::DecayFn::Kind::Linear: {
            Rational raw = Rational(1) - g.decay.gamma() * arg.rat();
            out.clamped = raw < Rational(0);
            phi_val = Scalar(out.clamped ? Rational(0) : raw);
            break;
        }
        case decay::DecayFn::Kind::Geometric:
            phi_val = g.decay.at_real(arg);
            break;
        case decay::DecayFn::Kind::Table: {
            std::int64_t ti = arg.rat().num();  // table break-evens are integers
            const auto& vals = g.decay.values();
            if (ti < (std::int64_t)vals.size()) {
                phi_val = Scalar(vals[ti]);
            } else if (vals.back() == Rational(0)) {
                out.clamped = true;
                phi_val = Scalar(Rational(0));
            } else {
                throw std::domain_error(
                    "reputation safety: decay table exhausted one step past the attacker "
                    "break-even");
            }
            break;
        }
    }
    out.general_threshold = Scalar(g.c) - Scalar(g.v) * phi_val;
    out.general_condition = cmp(Scalar(g.r), out.general_threshold) > 0;
    out.d_last_mover = last_profitable_mover(g) == Player::Defender;
    return out;
}

}  // namespace retal::solver
