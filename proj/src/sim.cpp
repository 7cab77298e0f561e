#include "retal/sim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace retal::sim {

namespace {

constexpr std::int64_t kEventCap = 1000000;  // race aborts as undecided past this

using game::Player;
using game::mover_at;

/// Nearest rational with denominator 10^6, for logging inexact USD values.
Rational to_money(const Scalar& s) {
    if (s.exact()) return s.rat();
    return Rational((std::int64_t)std::llround(s.dbl() * 1e6), 1000000);
}

std::int64_t quantize_ticks(const SimConfig& cfg, const Scalar& honest_block_times) {
    // round the elapsed time up to whole deterministic ticks, then to seconds
    Rational ticks_r;
    if (honest_block_times.exact()) {
        ticks_r = honest_block_times.rat() * Rational(cfg.ticks_per_honest_block);
    } else {
        ticks_r = Rational(
            (std::int64_t)std::ceil(honest_block_times.dbl() * (double)cfg.ticks_per_honest_block));
    }
    std::int64_t ticks = ticks_r.ceil();
    Rational seconds = Rational(ticks) * Rational(cfg.block_interval_seconds) /
                       Rational(cfg.ticks_per_honest_block);
    return seconds.ceil();
}

}  // namespace

double Rng::exponential(double rate) {
    if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
    double u = uniform();
    return -std::log1p(-u) / rate;
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t run_index) {
    Rng seeder(seed ^ (run_index + 1) * 0xD1B54A32D192ED03ull);
    return Rng(seeder.next());
}

void SimConfig::validate() const {
    econ.validate();
    if (game) game->validate();
    if (mode == Mode::Stylized && block_model != BlockModel::Deterministic)
        throw std::invalid_argument("sim: stylized mode uses the deterministic block model");
    if (mode == Mode::Race && block_model != BlockModel::Exponential)
        throw std::invalid_argument("sim: race mode uses the exponential block model");
    if (ticks_per_honest_block < 1)
        throw std::invalid_argument("sim: ticks per honest block must be >= 1");
    if (block_interval_seconds < 1)
        throw std::invalid_argument("sim: block interval must be positive");
    if (chain_id.empty()) throw std::invalid_argument("sim: chain id must be non-empty");
}

namespace {

struct RaceOutcome {
    bool success = false;
    bool undecided = false;
    double rental_duration = 0;  // time to mine the first `target` attack blocks
    double reveal_time = 0;
    std::int64_t attacker_blocks = 0;
    std::int64_t public_blocks = 0;
};

/// Merged exponential race from the fork point. The attack branch wins at the
/// first arrival after which the public branch has at least `target`
/// confirmations and the attack branch strictly exceeds it.
RaceOutcome run_race(Rng& rng, double beta, std::int64_t target, std::int64_t fork_height) {
    ChainState chain;
    chain.fork_height = fork_height;
    chain.public_tip_height = fork_height;
    chain.attacker_tip_height = fork_height;

    RaceOutcome out;
    double now = 0;
    double next_att = rng.exponential(beta);
    double next_pub = rng.exponential(1.0);
    for (std::int64_t events = 0; events < kEventCap; ++events) {
        if (next_att <= next_pub) {
            now = next_att;
            chain.attacker_tip_height += 1;
            chain.attacker_work += 1.0;
            if (chain.attacker_tip_height - fork_height == target) out.rental_duration = now;
            next_att = now + rng.exponential(beta);
        } else {
            now = next_pub;
            chain.public_tip_height += 1;
            chain.public_work += 1.0;
            chain.escrow_confirmations += 1;
            next_pub = now + rng.exponential(1.0);
        }
        if (chain.escrow_confirmations >= target && chain.attacker_branch_heavier()) {
            out.success = true;
            out.reveal_time = now;
            out.attacker_blocks = chain.attacker_tip_height - fork_height;
            out.public_blocks = chain.public_tip_height - fork_height;
            return out;
        }
    }
    out.undecided = true;
    out.attacker_blocks = chain.attacker_tip_height - fork_height;
    out.public_blocks = chain.public_tip_height - fork_height;
    out.rental_duration = now;
    return out;
}

}  // namespace

EpisodeResult run_attack_episode(const SimConfig& cfg, std::uint64_t run_index) {
    cfg.validate();
    EpisodeResult res;
    const std::int64_t e = cfg.econ.escrow_e;

    if (cfg.mode == SimConfig::Mode::Stylized) {
        auto breakdown = econ::net_attack_cost(cfg.econ);  // rejects beta <= 1
        res.success = true;
        res.duration_honest_block_times = Scalar(breakdown.duration_honest_block_times);
        res.attacker_blocks = e;
        res.realized_cost = Scalar(breakdown.rental_cost);
        res.realized_revenue = Scalar(breakdown.mining_revenue);
        res.realized_net = Scalar(breakdown.net_cost);

        ingest::ReorgEvent ev;
        ev.chain_id = cfg.chain_id;
        ev.timestamp = cfg.start_timestamp + quantize_ticks(cfg, res.duration_honest_block_times);
        ev.height = cfg.fork_height + 1;
        ev.depth = e;
        ev.blocks_added = e;
        ev.conflicting_spend = true;
        ev.value_usd = cfg.econ.tx_value_v;
        ev.beneficiary = "addr-attacker";
        res.events.push_back(std::move(ev));
        return res;
    }

    // Race mode. The rental accounting covers the e escrow-equivalent blocks
    // (the conflicting-spend block is attack block 1); arrivals past that
    // window are the margin needed to strictly out-weigh the public branch.
    double beta = cfg.econ.beta.to_double();
    Rng rng = Rng::stream(cfg.seed, run_index);
    RaceOutcome race = run_race(rng, beta, e, cfg.fork_height);

    res.success = race.success;
    res.undecided = race.undecided;
    res.duration_honest_block_times = Scalar::approx(race.rental_duration);
    res.attacker_blocks = race.attacker_blocks;
    Rational k = cfg.econ.kappa.at(cfg.econ.beta);
    double cost_rate = ((Rational(1) + k) * cfg.econ.beta * cfg.econ.honest_hashpower_n *
                        cfg.econ.hash_cost_ch)
                           .to_double();
    res.realized_cost = Scalar::approx(cost_rate * race.rental_duration);
    res.realized_revenue =
        Scalar((Rational(1) - cfg.econ.delta) * Rational(e) * cfg.econ.block_reward_pb);
    res.realized_net = res.realized_cost - res.realized_revenue;

    if (race.success) {
        ingest::ReorgEvent ev;
        ev.chain_id = cfg.chain_id;
        ev.timestamp =
            cfg.start_timestamp +
            (std::int64_t)std::llround(race.reveal_time * (double)cfg.block_interval_seconds);
        ev.height = cfg.fork_height + 1;
        ev.depth = race.public_blocks;
        ev.blocks_added = race.attacker_blocks;
        ev.conflicting_spend = true;
        ev.value_usd = cfg.econ.tx_value_v;
        ev.beneficiary = "addr-attacker";
        res.events.push_back(std::move(ev));
    }
    return res;
}

EpisodeResult run_retaliation_episode(const SimConfig& cfg, const game::StrategyProfile& sigma_a,
                                      const game::StrategyProfile& sigma_d,
                                      std::uint64_t run_index) {
    cfg.validate();
    sigma_a.validate();
    sigma_d.validate();
    if (!cfg.game)
        throw std::invalid_argument("retaliation episodes need the [game] parameters");
    const game::GameParams& g = *cfg.game;
    const bool race = cfg.mode == SimConfig::Mode::Race;
    Rng rng = Rng::stream(cfg.seed ^ 0x5245544Cull, run_index);

    EpisodeResult res;
    Scalar clock(Rational(0));
    std::int64_t depth_required = cfg.econ.escrow_e;  // first reorg orphans the escrow
    std::int64_t fights_a = 0, fights_d = 0;

    std::int64_t t = 0;
    for (;; ++t) {
        Player m = mover_at(t);
        // at() is 0 beyond either profile's length, so the loop always ends
        Rational p = m == Player::Attacker ? sigma_a.at(t) : sigma_d.at(t);
        bool fight;
        if (p == Rational(0)) fight = false;
        else if (p == Rational(1)) fight = true;
        else fight = rng.bernoulli(p.to_double());
        if (!fight) break;

        RoundOutcome round;
        round.t = t;
        round.mover = m;
        if (race) {
            RaceOutcome r = run_race(rng, cfg.econ.beta.to_double(), depth_required,
                                     cfg.fork_height);
            if (!r.success)
                throw std::runtime_error("retaliation: race undecided at event cap");
            round.depth = r.public_blocks;
            round.blocks_added = r.attacker_blocks;
            round.duration = Scalar::approx(r.rental_duration);
        } else {
            round.depth = depth_required;
            round.blocks_added = depth_required + 1;  // strictly heavier replacement
            round.duration = Scalar(Rational(round.blocks_added) / cfg.econ.beta);
        }
        clock = clock + round.duration;
        if (m == Player::Attacker) ++fights_a; else ++fights_d;
        res.attacker_blocks += m == Player::Attacker ? round.blocks_added : 0;

        ingest::ReorgEvent ev;
        ev.chain_id = cfg.chain_id;
        ev.timestamp = cfg.start_timestamp + quantize_ticks(cfg, clock);
        ev.height = cfg.fork_height + 1;
        ev.depth = round.depth;
        ev.blocks_added = round.blocks_added;
        ev.conflicting_spend = true;
        // the asset this reorg redirects, at its post-attack value
        ev.value_usd = to_money(g.decay.at(t + 1) * Scalar(g.v));
        ev.beneficiary = m == Player::Attacker ? "addr-attacker" : "addr-defender";
        res.events.push_back(std::move(ev));

        depth_required = round.blocks_added;  // the next reorg must orphan this chain
        res.rounds.push_back(std::move(round));
    }

    // realized terminal accounting from the running tallies
    Player quitter = mover_at(t);
    Scalar asset = g.decay.at(t) * Scalar(g.v);
    Scalar c(g.c);
    game::TerminalOutcome outcome;
    outcome.quitter = quitter;
    outcome.t = t;
    if (quitter == Player::Attacker) {
        outcome.payoff_attacker = -(Scalar(Rational(fights_a)) * c);
        outcome.payoff_defender = asset - Scalar(Rational(fights_d)) * c;
    } else {
        outcome.payoff_attacker = asset - Scalar(Rational(fights_a)) * c;
        outcome.payoff_defender = -Scalar(g.r) - Scalar(Rational(fights_d)) * c;
    }
    res.terminal = outcome;
    res.success = quitter == Player::Defender;
    res.duration_honest_block_times = clock;
    res.realized_cost = Scalar(Rational(fights_a)) * c;
    res.realized_revenue = res.success ? asset : Scalar(Rational(0));
    res.realized_net = res.realized_cost - res.realized_revenue;
    return res;
}

std::string canonical_string(const EpisodeResult& r) {
    std::string s;
    s += "success=" + std::string(r.success ? "true" : "false");
    s += " undecided=" + std::string(r.undecided ? "true" : "false");
    s += " duration=" + r.duration_honest_block_times.to_string();
    s += " attacker_blocks=" + std::to_string(r.attacker_blocks);
    s += " cost=" + r.realized_cost.to_string();
    s += " revenue=" + r.realized_revenue.to_string();
    s += " net=" + r.realized_net.to_string();
    if (r.terminal) {
        s += std::string(" quitter=") + game::player_name(r.terminal->quitter);
        s += " t=" + std::to_string(r.terminal->t);
        s += " payoff_a=" + r.terminal->payoff_attacker.to_string();
        s += " payoff_d=" + r.terminal->payoff_defender.to_string();
    }
    s += "\n";
    for (const auto& round : r.rounds)
        s += "round t=" + std::to_string(round.t) + " mover=" + game::player_name(round.mover) +
             " depth=" + std::to_string(round.depth) +
             " added=" + std::to_string(round.blocks_added) +
             " duration=" + round.duration.to_string() + "\n";
    s += ingest::serialize_csv(r.events);
    return s;
}

}  // namespace retal::sim
