#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "retal/rational.hpp"

namespace retal::econ {

/// Market impact on the hashrate rental price as a function of beta, the
/// rented multiple of honest hashpower. kappa(beta) >= 0 and weakly
/// increasing in beta.
class MarketImpactFn {
public:
    enum class Kind { Constant, Linear, Table };

    static MarketImpactFn constant(const Rational& value);
    static MarketImpactFn linear(const Rational& slope);
    /// Step-interpolated table of (beta, kappa) pairs: beta strictly
    /// increasing, kappa weakly increasing. A query takes the kappa of the
    /// largest tabulated beta at or below it; queries below the first entry
    /// see no impact.
    static MarketImpactFn table(std::vector<std::pair<Rational, Rational>> points);

    Kind kind() const { return kind_; }
    Rational at(const Rational& beta) const;

    std::string to_config_string() const;
    static MarketImpactFn parse(const std::string& text);

private:
    MarketImpactFn() = default;
    Kind kind_ = Kind::Constant;
    Rational param_;
    std::vector<std::pair<Rational, Rational>> points_;
};

/// Parameters of the attack-cost model. Monetary amounts in USD, hashpower
/// in hashes per block.
struct EconParams {
    Rational block_reward_pb;     // USD per block, > 0
    Rational honest_hashpower_n;  // hashes per block, > 0
    Rational hash_cost_ch;        // USD per hash, > 0
    Rational beta;                // rented multiple of honest hashpower, >= 0
    std::int64_t escrow_e = 1;    // confirmations the victim waits, >= 1
    Rational tx_value_v;          // attacked transaction size, USD, > 0
    MarketImpactFn kappa = MarketImpactFn::constant(Rational(0));
    Rational delta;               // price decrease after attack, in [0, 1]

    void validate() const;
};

/// Hashpower implied by free entry into mining: n = p_b / c_h.
Rational free_entry_hashpower(const Rational& pb, const Rational& ch);

struct AttackCostBreakdown {
    Rational rental_cost;      // (1 + kappa(beta)) * e * n * c_h
    Rational mining_revenue;   // (1 - delta) * e * p_b
    Rational net_cost;         // rental_cost - mining_revenue
    Rational duration_honest_block_times;  // e / beta
};

/// Cost of one double-spend attack. Under free-entry hashpower the net cost
/// reduces to (kappa(beta) + delta) * e * p_b. Requires beta > 1.
AttackCostBreakdown net_attack_cost(const EconParams& params);

struct Profitability {
    bool profitable = false;   // strictly positive profit
    Rational profit;           // v - net_cost
    /// Block reward above which the attack stops being profitable;
    /// disengaged when kappa(beta) + delta = 0 (no reward is large enough).
    std::optional<Rational> safe_pb_threshold;
};

/// Whether attacking the configured transaction is strictly profitable, the
/// raw profit, and the safety threshold on the block reward.
Profitability attack_profitability(const EconParams& params);

}  // namespace retal::econ
