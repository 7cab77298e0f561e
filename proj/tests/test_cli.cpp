#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "retal/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run dispatch(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = retal::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

const char* kLogPath = "cli_test_log.csv";

void write_sample_log() {
    std::ofstream f(kLogPath);
    f << "chain,timestamp,height,depth,blocks_added,conflicting_spend,value_usd,beneficiary\n"
         "LCC,2019-07-04T06:00:00Z,500100,41,42,true,5000,lcc-attacker\n"
         "LCC,2019-07-04T11:00:00Z,500130,1,1,false,0,\n"
         "LCC,2019-07-05T06:00:00Z,500240,60,61,true,45000,lcc-attacker\n"
         "BTG,2020-01-23T20:00:00Z,620000,15,16,true,30000,btg-attacker\n"
         "BTG,2020-01-24T04:00:00Z,620060,15,16,true,40000,btg-attacker\n"
         "BTG,2020-01-24T06:00:00Z,620075,2,2,false,0,\n";
}

}  // namespace

TEST_CASE("econ wiring produces the worked numbers") {
    auto run = dispatch({"econ", "--pb", "100000", "--ch", "0.001", "--beta", "2", "--escrow",
                         "6", "--value", "50000", "--kappa", "constant(0.05)", "--delta",
                         "0.05"});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "\"net_cost\": \"60000\""));
    CHECK(contains(run.out, "\"profitable\": false"));
    CHECK(contains(run.out, "\"free_entry_hashpower\": \"100000000\""));
}

TEST_CASE("game solve reports no attack under a safe reputation") {
    auto run = dispatch({"game", "solve", "--v", "10000", "--c", "4000", "--r", "1001",
                         "--decay", "linear(0.1)"});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "\"attack_occurs\": false"));
    CHECK(contains(run.out, "\"linear_threshold\": \"1000\""));
}

TEST_CASE("game verify prints both profiles and the deviation report") {
    auto run = dispatch({"game", "verify", "--v", "10000", "--c", "4000", "--r", "2000",
                         "--decay", "linear(0.1)", "--profile", "deterrent"});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "\"deterrent_profile\""));
    CHECK(contains(run.out, "\"equilibrium_profile\""));
    CHECK(contains(run.out, "\"subgame_perfect\": true"));

    run = dispatch({"game", "verify", "--v", "10000", "--c", "4000", "--r", "2000", "--decay",
                    "linear(0.1)", "--profile", "[1,0]"});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "\"subgame_perfect\": false"));
    CHECK(contains(run.out, "\"deviations\""));
}

TEST_CASE("game sweep emits the documented columns") {
    auto run = dispatch({"game", "sweep", "--v-list", "10000", "--cv-list", "0.4",
                         "--gamma-list", "0.1", "--r-mult-list", "1.1,10"});
    CHECK(run.code == 0);
    CHECK(contains(run.out,
                   "v,c,r,decay,T_A,T_D,d_last_mover,linear_cond,general_cond,attack_occurs"));
    CHECK(contains(run.out, "10000,4000,1100,linear(0.1),6,"));
    CHECK(contains(run.out, ",false\n"));  // attack_occurs stays false with r > gamma v
}

TEST_CASE("sim attack runs seeded and writes an event log") {
    auto run = dispatch({"sim", "attack", "--pb", "100000", "--ch", "0.001", "--beta", "2",
                         "--escrow", "6", "--value", "50000", "--mode", "race", "--seed", "11",
                         "--runs", "3", "--events-out", "cli_test_events.csv"});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "run,success,undecided,duration,attacker_blocks,cost,revenue,net"));
    std::ifstream f("cli_test_events.csv");
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header ==
          "chain,timestamp,height,depth,blocks_added,conflicting_spend,value_usd,beneficiary");
}

TEST_CASE("sim retaliation plays the equilibrium by default") {
    auto run = dispatch({"sim", "retaliation", "--pb", "100000", "--ch", "0.001", "--beta",
                         "2", "--escrow", "6", "--value", "50000", "--v", "10000", "--c",
                         "4000", "--r", "2000", "--decay", "linear(0.1)"});
    // game flags belong to `game`; retaliation needs a config file instead
    CHECK(run.code == 2);

    std::ofstream f("cli_test_game.conf");
    f << "[econ]\nblock_reward = 100000\nhash_cost = 0.001\nbeta = 2\nescrow = 6\n"
         "tx_value = 50000\n\n[game]\nv = 10000\nc = 4000\nr = 2000\ndecay = linear(0.1)\n";
    f.close();
    run = dispatch({"sim", "retaliation", "--config", "cli_test_game.conf"});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "\"quitter\": \"attacker\""));
    CHECK(contains(run.out, "\"payoff_defender\": \"10000\""));

    run = dispatch({"sim", "retaliation", "--config", "cli_test_game.conf", "--profile-a",
                    "[1,1,0]", "--profile-d", "[1,0]"});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "\"payoff_attacker\": \"5000\""));
}

TEST_CASE("reorg classify and summarize") {
    write_sample_log();
    auto run = dispatch({"reorg", "classify", "--input", kLogPath});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "\"double_spend\": 4"));
    CHECK(contains(run.out, "\"random\": 2"));

    run = dispatch({"reorg", "summarize", "--input", kLogPath});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "chain,first,last,attacks,total_usd"));
    CHECK(contains(run.out, "BTG,2020-01-23T20:00:00Z,2020-01-24T04:00:00Z,2,70000"));
    CHECK(contains(run.out, "LCC,2019-07-04T06:00:00Z,2019-07-05T06:00:00Z,2,50000"));

    run = dispatch({"reorg", "classify", "--input", kLogPath, "--csv"});
    CHECK(run.code == 0);
    CHECK(contains(run.out, ",double_spend\n"));
    CHECK(contains(run.out, ",random\n"));
}

TEST_CASE("plot splits the two series") {
    write_sample_log();
    auto run = dispatch({"plot", "--input", kLogPath});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "x,depth,series"));
    CHECK(contains(run.out, "double_spend"));
    CHECK(contains(run.out, "random"));

    // shallow-only logs produce a single series
    std::ofstream f("cli_test_noise.csv");
    f << "chain,timestamp,height,depth,blocks_added,conflicting_spend,value_usd,beneficiary\n"
         "LCC,1562220000,1,1,1,false,0,\n"
         "LCC,1562220600,2,2,2,false,0,\n";
    f.close();
    run = dispatch({"plot", "--input", "cli_test_noise.csv"});
    CHECK(run.code == 0);
    CHECK(!contains(run.out, "double_spend"));

    // an empty log still yields the header
    std::ofstream e("cli_test_empty.csv");
    e << "chain,timestamp,height,depth,blocks_added,conflicting_spend,value_usd,beneficiary\n";
    e.close();
    run = dispatch({"plot", "--input", "cli_test_empty.csv"});
    CHECK(run.code == 0);
    CHECK(run.out == "x,depth,series\n");
}

TEST_CASE("bad usage exits 2 with a message") {
    auto run = dispatch({"frobnicate"});
    CHECK(run.code == 2);
    CHECK(!run.err.empty());

    run = dispatch({});
    CHECK(run.code == 2);

    run = dispatch({"econ", "--pb", "100000", "--ch", "0.001", "--beta", "1", "--escrow", "6",
                    "--value", "1"});
    CHECK(run.code == 2);
    CHECK(contains(run.err, "majority"));

    run = dispatch({"reorg", "classify", "--input", "no_such_file.csv"});
    CHECK(run.code == 2);
}

TEST_CASE("identical invocations give identical bytes") {
    std::vector<std::string> args = {"sim",   "attack", "--pb",   "100000", "--ch",
                                     "0.001", "--beta", "2",      "--escrow", "6",
                                     "--value", "50000", "--mode", "race",   "--seed",
                                     "31337", "--runs", "5"};
    auto a = dispatch(args);
    auto b = dispatch(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    auto s1 = dispatch({"game", "solve", "--v", "10000", "--c", "4000", "--r", "2000",
                        "--decay", "linear(0.1)"});
    auto s2 = dispatch({"game", "solve", "--v", "10000", "--c", "4000", "--r", "2000",
                        "--decay", "linear(0.1)"});
    CHECK(s1.out == s2.out);
}

TEST_CASE("config file, environment and flags layer in order") {
    std::ofstream f("cli_test_layered.conf");
    f << "[game]\nv = 10000\nc = 4000\nr = 500\ndecay = linear(0.1)\n";
    f.close();

    auto run = dispatch({"game", "solve", "--config", "cli_test_layered.conf"});
    CHECK(run.code == 0);
    CHECK(contains(run.out, "\"r\": \"500\""));

    setenv("RETAL_GAME_R", "2000", 1);
    run = dispatch({"game", "solve", "--config", "cli_test_layered.conf"});
    CHECK(contains(run.out, "\"r\": \"2000\""));

    run = dispatch({"game", "solve", "--config", "cli_test_layered.conf", "--r", "3000"});
    CHECK(contains(run.out, "\"r\": \"3000\""));
    unsetenv("RETAL_GAME_R");

    std::ofstream bad("cli_test_bad.conf");
    bad << "[game]\nv = 10000\nvelocity = 9\n";
    bad.close();
    run = dispatch({"game", "solve", "--config", "cli_test_bad.conf"});
    CHECK(run.code == 2);
    CHECK(contains(run.err, "unknown key"));
}

TEST_CASE("--out writes the payload to a file") {
    auto run = dispatch({"econ", "--pb", "100000", "--ch", "0.001", "--beta", "2", "--escrow",
                         "6", "--value", "50000", "--out", "cli_test_out.json"});
    CHECK(run.code == 0);
    CHECK(run.out.empty());
    std::ifstream f("cli_test_out.json");
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(contains(ss.str(), "\"net_cost\""));
}

TEST_CASE("every documented flag appears in its help text") {
    struct HelpSpec {
        std::vector<std::string> cmd;
        std::vector<std::string> flags;
    };
    std::vector<HelpSpec> specs = {
        {{"econ"},
         {"--config", "--out", "--pb", "--ch", "--beta", "--escrow", "--value", "--kappa",
          "--delta", "--n"}},
        {{"game", "solve"}, {"--config", "--out", "--v", "--c", "--r", "--decay"}},
        {{"game", "verify"}, {"--v", "--c", "--r", "--decay", "--profile"}},
        {{"game", "sweep"}, {"--v-list", "--cv-list", "--gamma-list", "--r-mult-list", "--out"}},
        {{"sim", "attack"},
         {"--config", "--mode", "--seed", "--runs", "--events-out", "--pb", "--ch", "--beta",
          "--escrow", "--value", "--kappa", "--delta"}},
        {{"sim", "retaliation"}, {"--config", "--mode", "--seed", "--runs", "--profile-a",
                                  "--profile-d"}},
        {{"reorg", "classify"},
         {"--input", "--format", "--depth-threshold", "--no-require-conflict",
          "--window-hours", "--csv"}},
        {{"reorg", "summarize"}, {"--input", "--depth-threshold", "--json"}},
        {{"plot"}, {"--input", "--x", "--svg", "--depth-threshold"}},
    };
    for (const auto& spec : specs) {
        auto cmd = spec.cmd;
        cmd.push_back("--help");
        auto run = dispatch(cmd);
        CHECK(run.code == 0);
        for (const auto& flag : spec.flags) {
            INFO("command ", spec.cmd[0], " flag ", flag);
            CHECK(contains(run.out, flag));
        }
    }
}
