#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "retal/decay.hpp"
#include "retal/rational.hpp"
#include "retal/scalar.hpp"

namespace retal::game {

enum class Player { Attacker, Defender };

inline Player mover_at(std::int64_t t) {
    return t % 2 == 0 ? Player::Attacker : Player::Defender;
}
inline const char* player_name(Player p) {
    return p == Player::Attacker ? "attacker" : "defender";
}

/// One instance of the retaliation game: contested value v, per-attack net
/// cost c (0 < c < v), the defender's reputation cost r > 0 for quitting,
/// and the value-decay function applied per completed attack.
struct GameParams {
    Rational v;
    Rational c;
    Rational r;
    decay::DecayFn decay = decay::DecayFn::linear(Rational(1, 10));

    void validate() const;
    decay::BreakEvenTimes break_even() const;
};

/// Fight probabilities p_0, p_1, ... indexed by time step; the attacker moves
/// at even steps, the defender at odd ones. Entries beyond the stored length
/// are an implicit 0 (quit), so every finite profile terminates.
struct StrategyProfile {
    std::vector<Rational> probs;

    void validate() const;
    bool degenerate() const;
    /// p_t with the implicit zero tail.
    Rational at(std::int64_t t) const;
    std::string to_json_array() const;
    static StrategyProfile parse_json_array(const std::string& text);
};

struct TerminalOutcome {
    Player quitter = Player::Attacker;
    std::int64_t t = 0;
    Scalar payoff_attacker;
    Scalar payoff_defender;
};

/// Payoffs when `quitter` quits at step t (attacker quits at even t, defender
/// at odd t). Anchored to the concrete early terminal nodes of the game tree
/// and extended by the one-more-fight-costs-c recurrence:
///   attacker quits at even t: ( -(t/2)c,            phi(t)v - (t/2)c )
///   defender quits at odd t:  ( phi(t)v - (t+1)/2 c, -r - (t-1)/2 c  )
std::pair<Scalar, Scalar> terminal_payoffs(const GameParams& g, Player quitter, std::int64_t t);

/// floor(min(T_A, T_D)) + 1: one step past the earlier break-even. When the
/// defender's break-even is unbounded this falls back to floor(T_A) + 1,
/// since the attacker surely quits by then.
std::int64_t truncation_horizon(const GameParams& g);

/// The deterrence profile: the defender fights at every odd t <= T_D, the
/// attacker never fights. Length is truncation_horizon + 1.
StrategyProfile deterrent_profile(const GameParams& g);

/// Expected utilities (attacker, defender) of playing sigma from the root.
/// Beyond sigma's last entry the mover is forced to quit (the implicit zero).
std::pair<Scalar, Scalar> expected_utilities(const GameParams& g, const StrategyProfile& sigma);

}  // namespace retal::game
