#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "retal/econ.hpp"
#include "retal/game.hpp"
#include "retal/ingest.hpp"

namespace retal::sim {

/// Deterministic seeded generator (splitmix64). Hand-rolled so replay is
/// byte-identical regardless of standard-library distribution details.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return (double)(next() >> 11) * 0x1.0p-53; }
    /// Exponential inter-arrival time with the given rate.
    double exponential(double rate);
    bool bernoulli(double p) { return uniform() < p; }

    /// Independent stream for one run within a seeded batch.
    static Rng stream(std::uint64_t seed, std::uint64_t run_index);

private:
    std::uint64_t state_;
};

struct SimConfig {
    econ::EconParams econ;
    std::optional<game::GameParams> game;  // required for retaliation episodes

    enum class Mode { Stylized, Race };
    enum class BlockModel { Deterministic, Exponential };
    Mode mode = Mode::Stylized;
    BlockModel block_model = BlockModel::Deterministic;

    std::uint64_t seed = 0;
    std::int64_t ticks_per_honest_block = 1;     // deterministic timestamp granularity
    std::int64_t block_interval_seconds = 600;   // one honest-block-time, in seconds
    std::int64_t start_timestamp = 1546300800;   // 2019-01-01T00:00:00Z
    std::int64_t fork_height = 100000;
    std::string chain_id = "SIM";

    void validate() const;
};

/// Fork bookkeeping during a race. The canonical branch is the one with the
/// most cumulative work (block count here; both branches mine at the same
/// difficulty).
struct ChainState {
    std::int64_t fork_height = 0;
    std::int64_t public_tip_height = 0;
    std::int64_t attacker_tip_height = 0;
    double public_work = 0;
    double attacker_work = 0;
    std::int64_t escrow_confirmations = 0;  // public blocks on top of the contested tx

    bool attacker_branch_heavier() const { return attacker_work > public_work; }
};

struct RoundOutcome {
    std::int64_t t = 0;          // game time step of the fight
    game::Player mover = game::Player::Attacker;
    std::int64_t depth = 0;      // blocks orphaned by this reorg
    std::int64_t blocks_added = 0;
    Scalar duration;             // honest-block-times spent mining it
};

struct EpisodeResult {
    bool success = false;
    bool undecided = false;      // race hit the event cap before resolving
    Scalar duration_honest_block_times;
    std::int64_t attacker_blocks = 0;
    Scalar realized_cost;
    Scalar realized_revenue;
    Scalar realized_net;         // realized_cost - realized_revenue
    std::optional<game::TerminalOutcome> terminal;  // retaliation runs
    std::vector<ingest::ReorgEvent> events;
    std::vector<RoundOutcome> rounds;
};

/// One double-spend attack. Stylized mode reproduces the deterministic cost
/// accounting exactly: the attacker mines the e escrow-equivalent blocks in
/// e/beta honest-block-times at rental rate (1+kappa(beta))*beta*n*c_h.
/// Race mode realizes the same rental window stochastically (exponential
/// blocks at rate beta against the public branch at rate 1) and reveals once
/// the public branch has its e confirmations and the attack branch strictly
/// exceeds it; blocks past the rental window are the dominance margin.
/// Stylized mode requires beta > 1. A race with beta <= 1 still runs, but
/// the attacker rarely overtakes; runs that hit the 10^6-event cap come back
/// undecided (and unsuccessful).
EpisodeResult run_attack_episode(const SimConfig& cfg, std::uint64_t run_index = 0);

/// Plays the retaliation game move by move under the two profiles (sigma_a
/// consulted at even steps, sigma_d at odd ones). Every fight reorgs deep
/// enough to orphan the opponent's previous chain, so depths strictly grow.
/// The first conflicting-spend block of each reorg is block 1 of its chain.
EpisodeResult run_retaliation_episode(const SimConfig& cfg, const game::StrategyProfile& sigma_a,
                                      const game::StrategyProfile& sigma_d,
                                      std::uint64_t run_index = 0);

/// Canonical text form used for replay-determinism checks.
std::string canonical_string(const EpisodeResult& r);

}  // namespace retal::sim
