#include "retal/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "retal/config.hpp"
#include "retal/plot.hpp"
#include "retal/solver.hpp"
#include "retal/timeutil.hpp"

namespace retal::cli {

namespace {

using json = nlohmann::ordered_json;
using game::Player;

struct CommonFlags {
    std::string config_path;
    std::string out_path;
};

/// file config -> environment -> explicit flags, in increasing precedence
cfg::KeyValues assemble(const CommonFlags& common,
                        const std::vector<std::tuple<std::string, std::string,
                                                     std::optional<std::string>>>& overrides) {
    cfg::KeyValues kv;
    if (!common.config_path.empty()) kv = cfg::parse_config_file(common.config_path);
    cfg::apply_env(kv);
    for (const auto& [section, key, value] : overrides)
        if (value) kv.set(section, key, *value);
    return kv;
}

void write_output(const CommonFlags& common, std::ostream& out, const std::string& data) {
    if (common.out_path.empty()) {
        out << data;
        return;
    }
    std::ofstream f(common.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + common.out_path + "'");
    f << data;
}

json profile_json(const game::StrategyProfile& sigma) {
    json arr = json::array();
    for (const auto& p : sigma.probs) arr.push_back(p.to_string());
    return arr;
}

json scalar_json(const Scalar& s) { return s.to_string(); }

json times_json(const decay::BreakEvenTimes& times) {
    json j;
    j["attacker"] = times.attacker.to_string();
    j["defender"] = times.defender ? json(times.defender->to_string()) : json("unbounded");
    return j;
}

json outcome_json(const game::TerminalOutcome& o) {
    json j;
    j["quitter"] = game::player_name(o.quitter);
    j["t"] = o.t;
    j["payoff_attacker"] = scalar_json(o.payoff_attacker);
    j["payoff_defender"] = scalar_json(o.payoff_defender);
    return j;
}

json equilibrium_json(const solver::EquilibriumResult& res) {
    json j;
    j["attack_occurs"] = res.attack_occurs;
    j["horizon"] = res.horizon;
    j["break_even"] = times_json(res.times);
    j["profile"] = profile_json(res.profile);
    j["root_outcome"] = outcome_json(res.root_outcome);
    json nodes = json::array();
    for (const auto& nv : res.node_values) {
        json n;
        n["t"] = nv.t;
        n["mover"] = game::player_name(nv.mover);
        n["fight"] = nv.fight;
        n["value_attacker"] = scalar_json(nv.value_attacker);
        n["value_defender"] = scalar_json(nv.value_defender);
        nodes.push_back(n);
    }
    j["node_values"] = nodes;
    return j;
}

json safety_json(const solver::SafetyReport& s) {
    json j;
    j["linear_condition"] = s.linear_condition ? json(*s.linear_condition) : json("n/a");
    j["linear_threshold"] =
        s.linear_threshold ? json(s.linear_threshold->to_string()) : json("n/a");
    j["general_condition"] = s.general_condition;
    j["general_threshold"] = scalar_json(s.general_threshold);
    j["decay_support_clamped"] = s.clamped;
    j["d_last_mover"] = s.d_last_mover;
    return j;
}

json episode_json(const sim::EpisodeResult& r) {
    json j;
    j["success"] = r.success;
    j["undecided"] = r.undecided;
    j["duration_honest_block_times"] = scalar_json(r.duration_honest_block_times);
    j["attacker_blocks"] = r.attacker_blocks;
    j["realized_cost"] = scalar_json(r.realized_cost);
    j["realized_revenue"] = scalar_json(r.realized_revenue);
    j["realized_net"] = scalar_json(r.realized_net);
    if (r.terminal) j["terminal"] = outcome_json(*r.terminal);
    if (!r.rounds.empty()) {
        json rounds = json::array();
        for (const auto& round : r.rounds) {
            json rj;
            rj["t"] = round.t;
            rj["mover"] = game::player_name(round.mover);
            rj["depth"] = round.depth;
            rj["blocks_added"] = round.blocks_added;
            rj["duration"] = scalar_json(round.duration);
            rounds.push_back(rj);
        }
        j["rounds"] = rounds;
    }
    json events = json::array();
    for (const auto& ev : r.events) {
        json e;
        e["chain"] = ev.chain_id;
        e["timestamp"] = timeutil::format_utc(ev.timestamp);
        e["height"] = ev.height;
        e["depth"] = ev.depth;
        e["blocks_added"] = ev.blocks_added;
        e["conflicting_spend"] = ev.conflicting_spend;
        e["value_usd"] = ev.value_usd.to_string();
        e["beneficiary"] = ev.beneficiary;
        events.push_back(e);
    }
    j["events"] = events;
    return j;
}

std::vector<ingest::ReorgEvent> load_events(const std::string& input, const std::string& format,
                                            std::istream& stdin_stream) {
    ingest::Format fmt = ingest::Format::Csv;
    if (format == "json") fmt = ingest::Format::Json;
    else if (format == "csv") fmt = ingest::Format::Csv;
    else if (format.empty()) {
        if (input.size() > 5 && input.substr(input.size() - 5) == ".json")
            fmt = ingest::Format::Json;
    } else {
        throw std::invalid_argument("--format must be csv or json");
    }
    if (input == "-") return ingest::parse_reorg_log(stdin_stream, fmt);
    std::ifstream f(input);
    if (!f) throw std::invalid_argument("cannot open input '" + input + "'");
    return ingest::parse_reorg_log(f, fmt);
}

game::StrategyProfile resolve_profile(const std::string& spec, const game::GameParams& g) {
    if (spec == "deterrent") return game::deterrent_profile(g);
    if (spec == "equilibrium") return solver::backward_induction(g).profile;
    return game::StrategyProfile::parse_json_array(spec);
}

std::vector<Rational> parse_list(const std::string& text, const char* what) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(Rational::parse(item));
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Economics of proof-of-work double-spend attacks: attack-cost model, "
                 "retaliation-game equilibria, fork simulator, and reorg-log analysis"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for all subcommands");

    CommonFlags common;

    // ---- econ ----------------------------------------------------------
    auto* econ_cmd = app.add_subcommand("econ", "Attack cost, profitability and safety threshold");
    std::optional<std::string> e_pb, e_ch, e_beta, e_escrow, e_value, e_kappa, e_delta, e_n;
    econ_cmd->add_option("--config", common.config_path, "Config file (key = value sections)");
    econ_cmd->add_option("--out", common.out_path, "Write output to this file instead of stdout");
    econ_cmd->add_option("--pb", e_pb, "Block reward in USD (econ.block_reward)");
    econ_cmd->add_option("--ch", e_ch, "Rental cost per hash in USD (econ.hash_cost)");
    econ_cmd->add_option("--beta", e_beta, "Rented multiple of honest hashpower (econ.beta)");
    econ_cmd->add_option("--escrow", e_escrow, "Escrow period in blocks (econ.escrow)");
    econ_cmd->add_option("--value", e_value, "Attacked transaction value in USD (econ.tx_value)");
    econ_cmd->add_option("--kappa", e_kappa,
                         "Market impact: constant(x), linear(s), or table(b:k,...) (econ.kappa)");
    econ_cmd->add_option("--delta", e_delta, "Price decrease after attack, in [0,1] (econ.delta)");
    econ_cmd->add_option("--n", e_n,
                         "Honest hashpower override; defaults to free entry p_b/c_h "
                         "(econ.honest_hashpower)");

    // ---- game ----------------------------------------------------------
    auto* game_cmd = app.add_subcommand("game", "Retaliation game analysis");
    game_cmd->require_subcommand(1);
    std::optional<std::string> g_v, g_c, g_r, g_decay;
    std::string verify_profile = "deterrent";
    auto add_game_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "Config file (key = value sections)");
        cmd->add_option("--out", common.out_path, "Write output to this file instead of stdout");
        cmd->add_option("--v", g_v, "Contested transaction value in USD (game.v)");
        cmd->add_option("--c", g_c, "Net cost of one attack in USD (game.c)");
        cmd->add_option("--r", g_r, "Defender reputation cost in USD (game.r)");
        cmd->add_option("--decay", g_decay,
                        "Value decay: linear(g), geometric(d), or table(1,v1,...) (game.decay)");
    };
    auto* solve_cmd = game_cmd->add_subcommand(
        "solve", "Backward induction: equilibrium profile, node values and safety conditions");
    add_game_flags(solve_cmd);
    auto* verify_cmd = game_cmd->add_subcommand(
        "verify", "One-deviation check of a strategy profile");
    add_game_flags(verify_cmd);
    verify_cmd->add_option("--profile", verify_profile,
                           "Profile to verify: 'deterrent', 'equilibrium', or a JSON array "
                           "of fight probabilities like [0,1,0,1]");
    auto* sweep_cmd = game_cmd->add_subcommand(
        "sweep", "Solve a linear-decay parameter grid; emits one CSV row per game");
    std::string sw_v = "1000,10000,100000";
    std::string sw_cv = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
    std::string sw_gamma = "0.05,0.1,0.2,0.5";
    std::string sw_rmult = "1.01,1.1,10";
    sweep_cmd->add_option("--out", common.out_path, "Write output to this file instead of stdout");
    sweep_cmd->add_option("--v-list", sw_v, "Comma-separated contested values");
    sweep_cmd->add_option("--cv-list", sw_cv, "Comma-separated c/v ratios in (0,1)");
    sweep_cmd->add_option("--gamma-list", sw_gamma, "Comma-separated linear decay rates");
    sweep_cmd->add_option("--r-mult-list", sw_rmult,
                          "Comma-separated multiples of gamma*v used as reputation costs");

    // ---- sim -----------------------------------------------------------
    auto* sim_cmd = app.add_subcommand("sim", "Stochastic fork simulator");
    sim_cmd->require_subcommand(1);
    std::optional<std::string> s_mode, s_seed;
    std::uint64_t s_runs = 1;
    std::string s_events_out;
    std::string s_profile_a = "equilibrium", s_profile_d = "equilibrium";
    auto add_sim_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "Config file (key = value sections)");
        cmd->add_option("--out", common.out_path, "Write output to this file instead of stdout");
        cmd->add_option("--mode", s_mode, "stylized (deterministic) or race (exponential blocks)");
        cmd->add_option("--seed", s_seed, "Seed for the episode random streams (sim.seed)");
        cmd->add_option("--runs", s_runs, "Number of independent runs");
        cmd->add_option("--events-out", s_events_out,
                        "Append emitted reorg events to this CSV log");
    };
    auto* attack_cmd = sim_cmd->add_subcommand("attack", "Single double-spend attack episodes");
    add_sim_flags(attack_cmd);
    std::optional<std::string> e2_pb, e2_ch, e2_beta, e2_escrow, e2_value, e2_kappa, e2_delta;
    attack_cmd->add_option("--pb", e2_pb, "Block reward in USD (econ.block_reward)");
    attack_cmd->add_option("--ch", e2_ch, "Rental cost per hash in USD (econ.hash_cost)");
    attack_cmd->add_option("--beta", e2_beta, "Rented multiple of honest hashpower (econ.beta)");
    attack_cmd->add_option("--escrow", e2_escrow, "Escrow period in blocks (econ.escrow)");
    attack_cmd->add_option("--value", e2_value, "Attacked transaction value (econ.tx_value)");
    attack_cmd->add_option("--kappa", e2_kappa, "Market impact function (econ.kappa)");
    attack_cmd->add_option("--delta", e2_delta, "Price decrease after attack (econ.delta)");
    auto* ret_cmd = sim_cmd->add_subcommand("retaliation",
                                            "Full attack/counterattack episodes under profiles");
    add_sim_flags(ret_cmd);
    ret_cmd->add_option("--profile-a", s_profile_a,
                        "Attacker profile: 'deterrent', 'equilibrium', or a JSON array");
    ret_cmd->add_option("--profile-d", s_profile_d,
                        "Defender profile: 'deterrent', 'equilibrium', or a JSON array");

    // ---- reorg ---------------------------------------------------------
    auto* reorg_cmd = app.add_subcommand("reorg", "Reorg-log classification and summaries");
    reorg_cmd->require_subcommand(1);
    std::string r_input = "-", r_format;
    int r_depth_threshold = 10;
    bool r_no_conflict = false;
    double r_window_hours = 48.0;
    bool r_csv = false;
    auto add_reorg_flags = [&](CLI::App* cmd) {
        cmd->add_option("--input", r_input, "Reorg log path, or - for stdin");
        cmd->add_option("--format", r_format, "Input format: csv or json (default: by extension)");
        cmd->add_option("--depth-threshold", r_depth_threshold,
                        "Minimum depth classified as a double-spend (>= 2)");
        cmd->add_flag("--no-require-conflict", r_no_conflict,
                      "Classify deep reorgs as double-spends even without a conflicting spend");
        cmd->add_option("--window-hours", r_window_hours,
                        "Grouping window for retaliation episodes");
        cmd->add_option("--out", common.out_path, "Write output to this file instead of stdout");
    };
    auto* classify_cmd = reorg_cmd->add_subcommand(
        "classify", "Classify each event as random or double_spend and group episodes");
    add_reorg_flags(classify_cmd);
    classify_cmd->add_flag("--csv", r_csv, "Emit the input rows with a class column appended");
    auto* summarize_cmd = reorg_cmd->add_subcommand(
        "summarize", "Per-chain double-spend counts and USD totals");
    add_reorg_flags(summarize_cmd);
    bool sum_json = false;
    summarize_cmd->add_flag("--json", sum_json, "Emit JSON instead of CSV rows");

    // ---- plot ----------------------------------------------------------
    auto* plot_cmd = app.add_subcommand("plot", "Scatter data (and optional SVG) of reorg depths");
    add_reorg_flags(plot_cmd);
    std::string p_x = "height", p_svg;
    plot_cmd->add_option("--x", p_x, "X axis: height or timestamp");
    plot_cmd->add_option("--svg", p_svg, "Also render the scatter to this SVG file");

    std::vector<const char*> argv;
    argv.push_back("retal");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError& e) {
        // routes --help output to `out` (exit 0) and usage errors to `err`
        std::ostringstream os, es;
        int code = app.exit(e, os, es);
        out << os.str();
        err << es.str();
        return code == 0 ? 0 : 2;
    }

    try {
        if (econ_cmd->parsed()) {
            auto kv = assemble(common, {{"econ", "block_reward", e_pb},
                                        {"econ", "hash_cost", e_ch},
                                        {"econ", "beta", e_beta},
                                        {"econ", "escrow", e_escrow},
                                        {"econ", "tx_value", e_value},
                                        {"econ", "kappa", e_kappa},
                                        {"econ", "delta", e_delta},
                                        {"econ", "honest_hashpower", e_n}});
            auto params = cfg::build_econ(kv);
            auto breakdown = econ::net_attack_cost(params);
            auto prof = econ::attack_profitability(params);
            json j;
            j["free_entry_hashpower"] =
                econ::free_entry_hashpower(params.block_reward_pb, params.hash_cost_ch)
                    .to_string();
            j["honest_hashpower"] = params.honest_hashpower_n.to_string();
            j["kappa_at_beta"] = params.kappa.at(params.beta).to_string();
            j["rental_cost"] = breakdown.rental_cost.to_string();
            j["mining_revenue"] = breakdown.mining_revenue.to_string();
            j["net_cost"] = breakdown.net_cost.to_string();
            j["duration_honest_block_times"] =
                breakdown.duration_honest_block_times.to_string();
            j["profit"] = prof.profit.to_string();
            j["profitable"] = prof.profitable;
            j["safe_pb_threshold"] =
                prof.safe_pb_threshold ? json(prof.safe_pb_threshold->to_string())
                                       : json("unbounded");
            write_output(common, out, j.dump(2) + "\n");
            return 0;
        }

        if (solve_cmd->parsed() || verify_cmd->parsed()) {
            auto kv = assemble(common, {{"game", "v", g_v},
                                        {"game", "c", g_c},
                                        {"game", "r", g_r},
                                        {"game", "decay", g_decay}});
            auto g = cfg::build_game(kv);
            auto equilibrium = solver::backward_induction(g);
            if (solve_cmd->parsed()) {
                json j;
                j["v"] = g.v.to_string();
                j["c"] = g.c.to_string();
                j["r"] = g.r.to_string();
                j["decay"] = g.decay.to_config_string();
                j.update(equilibrium_json(equilibrium));
                j["safety"] = safety_json(solver::reputation_safety(g));
                write_output(common, out, j.dump(2) + "\n");
            } else {
                auto deterrent = game::deterrent_profile(g);
                auto sigma = resolve_profile(verify_profile, g);
                auto report = solver::one_deviation_check(g, sigma);
                json j;
                j["checked_profile"] = profile_json(sigma);
                j["deterrent_profile"] = profile_json(deterrent);
                j["equilibrium_profile"] = profile_json(equilibrium.profile);
                j["profiles_agree"] = deterrent.probs == equilibrium.profile.probs;
                json devs = json::array();
                for (const auto& d : report) {
                    json dj;
                    dj["t"] = d.t;
                    dj["player"] = game::player_name(d.player);
                    dj["current_p"] = d.current_p.to_string();
                    dj["better_p"] = d.better_p.to_string();
                    dj["gain"] = scalar_json(d.gain);
                    devs.push_back(dj);
                }
                j["deviations"] = devs;
                j["subgame_perfect"] = report.empty();
                write_output(common, out, j.dump(2) + "\n");
            }
            return 0;
        }

        if (sweep_cmd->parsed()) {
            auto vs = parse_list(sw_v, "--v-list");
            auto cvs = parse_list(sw_cv, "--cv-list");
            auto gammas = parse_list(sw_gamma, "--gamma-list");
            auto rmults = parse_list(sw_rmult, "--r-mult-list");
            std::string csv = "v,c,r,decay,T_A,T_D,d_last_mover,linear_cond,general_cond,"
                              "attack_occurs\n";
            for (const auto& v : vs)
                for (const auto& cv : cvs)
                    for (const auto& gamma : gammas)
                        for (const auto& rm : rmults) {
                            game::GameParams g;
                            g.v = v;
                            g.c = cv * v;
                            g.r = rm * gamma * v;
                            g.decay = decay::DecayFn::linear(gamma);
                            auto res = solver::backward_induction(g);
                            auto safety = solver::reputation_safety(g);
                            csv += g.v.to_string() + "," + g.c.to_string() + "," +
                                   g.r.to_string() + "," + g.decay.to_config_string() + "," +
                                   res.times.attacker.to_string() + "," +
                                   (res.times.defender ? res.times.defender->to_string()
                                                       : std::string("unbounded")) +
                                   "," + bool_str(safety.d_last_mover) + "," +
                                   bool_str(safety.linear_condition.value_or(false)) + "," +
                                   bool_str(safety.general_condition) + "," +
                                   bool_str(res.attack_occurs) + "\n";
                        }
            write_output(common, out, csv);
            return 0;
        }

        if (attack_cmd->parsed() || ret_cmd->parsed()) {
            std::vector<std::tuple<std::string, std::string, std::optional<std::string>>> ov = {
                {"sim", "mode", s_mode}, {"sim", "seed", s_seed}};
            if (attack_cmd->parsed()) {
                ov.insert(ov.end(), {{"econ", "block_reward", e2_pb},
                                     {"econ", "hash_cost", e2_ch},
                                     {"econ", "beta", e2_beta},
                                     {"econ", "escrow", e2_escrow},
                                     {"econ", "tx_value", e2_value},
                                     {"econ", "kappa", e2_kappa},
                                     {"econ", "delta", e2_delta}});
            }
            auto kv = assemble(common, ov);
            auto cfg = cfg::build_sim(kv);

            std::vector<ingest::ReorgEvent> all_events;
            std::string data;
            if (attack_cmd->parsed()) {
                if (s_runs == 1) {
                    auto res = sim::run_attack_episode(cfg, 0);
                    all_events = res.events;
                    data = episode_json(res).dump(2) + "\n";
                } else {
                    std::string csv =
                        "run,success,undecided,duration,attacker_blocks,cost,revenue,net\n";
                    for (std::uint64_t i = 0; i < s_runs; ++i) {
                        auto res = sim::run_attack_episode(cfg, i);
                        all_events.insert(all_events.end(), res.events.begin(),
                                          res.events.end());
                        csv += std::to_string(i) + "," + bool_str(res.success) + "," +
                               bool_str(res.undecided) + "," +
                               res.duration_honest_block_times.to_string() + "," +
                               std::to_string(res.attacker_blocks) + "," +
                               res.realized_cost.to_string() + "," +
                               res.realized_revenue.to_string() + "," +
                               res.realized_net.to_string() + "\n";
                    }
                    data = csv;
                }
            } else {
                if (!cfg.game)
                    throw std::invalid_argument(
                        "sim retaliation needs [game] parameters (config or flags)");
                auto sigma_a = resolve_profile(s_profile_a, *cfg.game);
                auto sigma_d = resolve_profile(s_profile_d, *cfg.game);
                if (s_runs == 1) {
                    auto res = sim::run_retaliation_episode(cfg, sigma_a, sigma_d, 0);
                    all_events = res.events;
                    data = episode_json(res).dump(2) + "\n";
                } else {
                    std::string csv = "run,quitter,quit_t,fights,payoff_attacker,payoff_defender\n";
                    for (std::uint64_t i = 0; i < s_runs; ++i) {
                        auto res = sim::run_retaliation_episode(cfg, sigma_a, sigma_d, i);
                        all_events.insert(all_events.end(), res.events.begin(),
                                          res.events.end());
                        csv += std::to_string(i) + "," +
                               game::player_name(res.terminal->quitter) + "," +
                               std::to_string(res.terminal->t) + "," +
                               std::to_string(res.rounds.size()) + "," +
                               res.terminal->payoff_attacker.to_string() + "," +
                               res.terminal->payoff_defender.to_string() + "\n";
                    }
                    data = csv;
                }
            }
            if (!s_events_out.empty()) {
                std::ofstream f(s_events_out, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open '" + s_events_out + "'");
                f << ingest::serialize_csv(all_events);
            }
            write_output(common, out, data);
            return 0;
        }

        if (classify_cmd->parsed() || summarize_cmd->parsed() || plot_cmd->parsed()) {
            std::istream& stdin_stream = std::cin;
            auto events = load_events(r_input, r_format, stdin_stream);
            auto classes = ingest::classify_events(events, r_depth_threshold, !r_no_conflict);

            if (classify_cmd->parsed()) {
                auto episodes = ingest::group_retaliation_episodes(
                    events, classes, (std::int64_t)(r_window_hours * 3600.0));
                if (r_csv) {
                    std::string csv;
                    csv += std::string(ingest::kCsvHeader) + ",class\n";
                    std::string body = ingest::serialize_csv(events);
                    std::istringstream lines(body);
                    std::string line;
                    std::getline(lines, line);  // drop the inner header
                    std::size_t i = 0;
                    while (std::getline(lines, line)) {
                        csv += line + "," +
                               (classes[i] == ingest::EventClass::DoubleSpend ? "double_spend"
                                                                              : "random") +
                               "\n";
                        ++i;
                    }
                    write_output(common, out, csv);
                } else {
                    json j;
                    std::size_t ds = 0;
                    json rows = json::array();
                    for (std::size_t i = 0; i < events.size(); ++i) {
                        bool is_ds = classes[i] == ingest::EventClass::DoubleSpend;
                        ds += is_ds;
                        json e;
                        e["chain"] = events[i].chain_id;
                        e["timestamp"] = timeutil::format_utc(events[i].timestamp);
                        e["height"] = events[i].height;
                        e["depth"] = events[i].depth;
                        e["class"] = is_ds ? "double_spend" : "random";
                        rows.push_back(e);
                    }
                    j["counts"] = {{"events", events.size()},
                                   {"double_spend", ds},
                                   {"random", events.size() - ds}};
                    j["events"] = rows;
                    json eps = json::array();
                    for (const auto& ep : episodes) {
                        json e;
                        e["chain"] = ep.events.front().chain_id;
                        e["length"] = ep.length();
                        e["classification"] =
                            ep.single_attack() ? "single_attack" : "retaliation";
                        e["alternation_verified"] = ep.alternation_verified;
                        e["first"] = timeutil::format_utc(ep.events.front().timestamp);
                        e["last"] = timeutil::format_utc(ep.events.back().timestamp);
                        eps.push_back(e);
                    }
                    j["episodes"] = eps;
                    write_output(common, out, j.dump(2) + "\n");
                }
            } else if (summarize_cmd->parsed()) {
                auto summaries = ingest::summarize(events, classes);
                if (sum_json) {
                    json rows = json::array();
                    for (const auto& s : summaries) {
                        json r;
                        r["chain"] = s.chain_id;
                        r["first"] = timeutil::format_utc(s.first_timestamp);
                        r["last"] = timeutil::format_utc(s.last_timestamp);
                        r["attacks"] = s.attacks;
                        r["total_usd"] = s.total_usd.to_string();
                        rows.push_back(r);
                    }
                    write_output(common, out, rows.dump(2) + "\n");
                } else {
                    std::string csv = "chain,first,last,attacks,total_usd\n";
                    for (const auto& s : summaries)
                        csv += s.chain_id + "," + timeutil::format_utc(s.first_timestamp) + "," +
                               timeutil::format_utc(s.last_timestamp) + "," +
                               std::to_string(s.attacks) + "," + s.total_usd.to_string() + "\n";
                    write_output(common, out, csv);
                }
            } else {
                plot::XAxis x;
                if (p_x == "height") x = plot::XAxis::Height;
                else if (p_x == "timestamp") x = plot::XAxis::Timestamp;
                else throw std::invalid_argument("--x must be height or timestamp");
                if (!p_svg.empty()) {
                    std::ofstream f(p_svg, std::ios::binary);
                    if (!f) throw std::runtime_error("cannot open '" + p_svg + "'");
                    f << plot::scatter_svg(events, classes, x);
                }
                write_output(common, out, plot::scatter_csv(events, classes, x));
            }
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    err << "error: no subcommand executed\n";
    return 2;
}

}  // namespace retal::cli
