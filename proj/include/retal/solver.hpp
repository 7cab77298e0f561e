#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "retal/game.hpp"

namespace retal::solver {

using game::GameParams;
using game::Player;
using game::StrategyProfile;
using game::TerminalOutcome;

struct NodeValue {
    std::int64_t t = 0;
    Player mover = Player::Attacker;
    bool fight = false;           // the mover's equilibrium action at t
    Scalar value_attacker;        // continuation value of optimal play from t
    Scalar value_defender;
};

struct EquilibriumResult {
    StrategyProfile profile;      // degenerate
    std::vector<NodeValue> node_values;  // t = 0 .. horizon
    TerminalOutcome root_outcome;
    bool attack_occurs = false;   // p_0 = 1 on the equilibrium path
    std::int64_t horizon = 0;
    decay::BreakEvenTimes times;
};

/// Exact backward induction over the truncated game. Ties (fight value equal
/// to quit value) resolve to quit, matching the weak break-even convention.
EquilibriumResult backward_induction(const GameParams& g);

struct Deviation {
    std::int64_t t = 0;
    Player player = Player::Attacker;
    Rational current_p;
    Rational better_p;
    Scalar gain;                  // strictly positive
};
using DeviationReport = std::vector<Deviation>;

/// One-deviation check of sigma at every node up to the truncation horizon.
/// Expected utility is affine in any single p_t, so it suffices to compare
/// against the endpoint replacements p_t in {0, 1}; an interior deviation can
/// never strictly beat the better endpoint. Empty report == subgame perfect.
DeviationReport one_deviation_check(const GameParams& g, const StrategyProfile& sigma);

/// Independent oracle: enumerates all 2^(horizon+1) degenerate profiles and
/// filters for the one where every node's action is a best response under
/// the quit-on-tie rule. Errors when the horizon exceeds max_horizon.
EquilibriumResult brute_force_equilibrium(const GameParams& g, int max_horizon = 14);

/// Which player still has a profitable move later into the game: the
/// defender iff even_floor(T_A) < odd_floor(T_D) (unbounded T_D counts as
/// the defender; T_D < 1 leaves no odd floor and counts as the attacker).
Player last_profitable_mover(const GameParams& g);

struct SafetyReport {
    std::optional<bool> linear_condition;       // r > gamma*v (linear decay only)
    std::optional<Rational> linear_threshold;   // gamma*v
    bool general_condition = false;             // r > c - v*phi(phi^-1(c/v) + 1)
    Scalar general_threshold;
    bool clamped = false;  // phi^-1(c/v)+1 fell past the decay's support; phi taken as 0
    bool d_last_mover = false;
};

/// Sufficient conditions for the no-attack equilibrium.
SafetyReport reputation_safety(const GameParams& g);

}  // namespace retal::solver
