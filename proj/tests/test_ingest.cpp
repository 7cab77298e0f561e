#include <doctest.h>

#include <algorithm>
#include <random>

#include "retal/ingest.hpp"
#include "retal/timeutil.hpp"

using namespace retal;
using ingest::EventClass;
using ingest::ReorgEvent;

namespace {

ReorgEvent make_event(std::string chain, std::int64_t ts, std::int64_t depth, bool conflict,
                      std::int64_t value = 0, std::string beneficiary = "") {
    ReorgEvent ev;
    ev.chain_id = std::move(chain);
    ev.timestamp = ts;
    ev.height = 500000 + ts % 1000;
    ev.depth = depth;
    ev.blocks_added = depth + 1;
    ev.conflicting_spend = conflict;
    ev.value_usd = Rational(value);
    ev.beneficiary = std::move(beneficiary);
    return ev;
}

constexpr std::int64_t kHour = 3600;

// six deep LCC reorgs over four days plus shallow noise, per-chain totals
// 50000 (LCC) and 70000 (BTG)
std::vector<ReorgEvent> synthetic_log() {
    std::vector<ReorgEvent> log;
    std::int64_t lcc0 = timeutil::parse_utc("2019-07-04T06:00:00Z");
    std::int64_t depths[6] = {41, 55, 60, 72, 88, 97};
    std::int64_t values[6] = {5000, 10000, 8000, 9000, 11000, 7000};
    for (int i = 0; i < 6; ++i)
        log.push_back(make_event("LCC", lcc0 + i * 14 * kHour, depths[i], true, values[i],
                                 "lcc-attacker"));
    std::int64_t btg0 = timeutil::parse_utc("2020-01-23T20:00:00Z");
    log.push_back(make_event("BTG", btg0, 15, true, 30000, "btg-attacker"));
    log.push_back(make_event("BTG", btg0 + 8 * kHour, 15, true, 40000, "btg-attacker"));
    for (int i = 0; i < 25; ++i)
        log.push_back(make_event(i % 2 ? "LCC" : "BTG", lcc0 + i * 5 * kHour + 977,
                                 1 + i % 2, false));
    return log;
}

}  // namespace

TEST_CASE("csv parsing round trips and validates") {
    std::string csv = std::string(ingest::kCsvHeader) + "\n";
    SUBCASE("empty body is fine") {
        auto events = ingest::parse_reorg_log(csv, ingest::Format::Csv);
        CHECK(events.empty());
    }
    SUBCASE("one valid row") {
        csv += "LCC,2019-07-04T06:00:00Z,500123,2,3,true,5000,attacker\n";
        auto events = ingest::parse_reorg_log(csv, ingest::Format::Csv);
        REQUIRE(events.size() == 1);
        CHECK(events[0].chain_id == "LCC");
        CHECK(events[0].depth == 2);
        CHECK(events[0].blocks_added == 3);
        CHECK(events[0].conflicting_spend);
        CHECK(events[0].value_usd == Rational(5000));
        CHECK(events[0].beneficiary == "attacker");
        CHECK(timeutil::format_utc(events[0].timestamp) == "2019-07-04T06:00:00Z");
    }
    SUBCASE("epoch timestamps are accepted") {
        csv += "LCC,1562220000,500123,2,3,false,0,\n";
        auto events = ingest::parse_reorg_log(csv, ingest::Format::Csv);
        CHECK(events[0].timestamp == 1562220000);
    }
    SUBCASE("zero depth is rejected with its row") {
        csv += "LCC,1562220000,500123,2,3,false,0,\n";
        csv += "LCC,1562220900,500124,0,1,false,0,\n";
        try {
            ingest::parse_reorg_log(csv, ingest::Format::Csv);
            FAIL("expected a parse error");
        } catch (const ingest::ParseError& e) {
            CHECK(e.row() == 3);
        }
    }
    SUBCASE("value without a conflicting spend is rejected") {
        csv += "LCC,1562220000,500123,12,13,false,9000,\n";
        CHECK_THROWS_AS(ingest::parse_reorg_log(csv, ingest::Format::Csv), ingest::ParseError);
    }
    SUBCASE("bad header is rejected") {
        CHECK_THROWS_AS(ingest::parse_reorg_log("a,b,c\n", ingest::Format::Csv),
                        ingest::ParseError);
    }
    SUBCASE("wrong field count is rejected") {
        csv += "LCC,1562220000,500123,2\n";
        CHECK_THROWS_AS(ingest::parse_reorg_log(csv, ingest::Format::Csv), ingest::ParseError);
    }
}

TEST_CASE("json parsing mirrors the csv schema") {
    std::string js = R"([
      {"chain":"BTG","timestamp":"2020-01-23T20:00:00Z","height":620000,"depth":15,
       "blocks_added":16,"conflicting_spend":true,"value_usd":"30000","beneficiary":"x"},
      {"chain":"BTG","timestamp":1579810800,"height":620030,"depth":1,
       "blocks_added":2,"conflicting_spend":false,"value_usd":0,"beneficiary":""}
    ])";
    auto events = ingest::parse_reorg_log(js, ingest::Format::Json);
    REQUIRE(events.size() == 2);
    CHECK(events[0].value_usd == Rational(30000));
    CHECK(events[1].depth == 1);

    CHECK_THROWS_AS(ingest::parse_reorg_log("[{\"chain\":\"X\"}]", ingest::Format::Json),
                    ingest::ParseError);
    CHECK_THROWS_AS(ingest::parse_reorg_log("{}", ingest::Format::Json), ingest::ParseError);
}

TEST_CASE("classification thresholds") {
    std::vector<ReorgEvent> events = {
        make_event("LCC", 0, 2, false),          // shallow noise
        make_event("LCC", 1, 60, true, 100),     // deep conflicting reorg
        make_event("BTG", 2, 15, true, 100),     // the observed mid-depth attacks
        make_event("BTG", 3, 40, false),         // deep but no conflicting spend
    };
    auto classes = ingest::classify_events(events, 10, true);
    CHECK(classes[0] == EventClass::Random);
    CHECK(classes[1] == EventClass::DoubleSpend);
    CHECK(classes[2] == EventClass::DoubleSpend);
    CHECK(classes[3] == EventClass::Random);

    auto lax = ingest::classify_events(events, 10, false);
    CHECK(lax[3] == EventClass::DoubleSpend);

    CHECK_THROWS_AS(ingest::classify_events(events, 1, true), std::invalid_argument);
}

TEST_CASE("raising the threshold never promotes an event") {
    auto log = synthetic_log();
    auto prev = ingest::classify_events(log, 2, true);
    for (int threshold = 3; threshold <= 120; ++threshold) {
        auto now = ingest::classify_events(log, threshold, true);
        for (std::size_t i = 0; i < log.size(); ++i)
            if (prev[i] == EventClass::Random) CHECK(now[i] == EventClass::Random);
        prev = now;
    }
}

TEST_CASE("episode grouping follows the alternation rule") {
    std::int64_t t0 = timeutil::parse_utc("2020-02-08T00:00:00Z");
    std::vector<ReorgEvent> events;
    // four alternating deep reorgs within the window
    for (int i = 0; i < 4; ++i)
        events.push_back(make_event("BTG", t0 + i * 6 * kHour, 15 + i, true, 1000,
                                    i % 2 ? "addr-b" : "addr-a"));
    auto classes = ingest::classify_events(events, 10, true);
    auto episodes = ingest::group_retaliation_episodes(events, classes, 48 * kHour);
    REQUIRE(episodes.size() == 1);
    CHECK(episodes[0].length() == 4);
    CHECK(!episodes[0].single_attack());
    CHECK(episodes[0].alternation_verified);

    SUBCASE("a two-event exchange is one episode") {
        events.resize(2);
        classes.resize(2);
        auto eps = ingest::group_retaliation_episodes(events, classes, 48 * kHour);
        REQUIRE(eps.size() == 1);
        CHECK(eps[0].length() == 2);
    }
    SUBCASE("a lone deep reorg is a single attack") {
        events.resize(1);
        classes.resize(1);
        auto eps = ingest::group_retaliation_episodes(events, classes, 48 * kHour);
        REQUIRE(eps.size() == 1);
        CHECK(eps[0].single_attack());
    }
    SUBCASE("repeated beneficiaries split the sequence") {
        events[1].beneficiary = "addr-a";  // tags become a, a, a, b
        auto eps = ingest::group_retaliation_episodes(events, classes, 48 * kHour);
        REQUIRE(eps.size() == 3);
        CHECK(eps[0].length() == 1);
        CHECK(eps[1].length() == 1);
        CHECK(eps[2].length() == 2);  // the trailing a, b pair alternates
    }
    SUBCASE("gaps beyond the window split the sequence") {
        events[2].timestamp += 80 * kHour;
        events[3].timestamp += 80 * kHour;
        auto eps = ingest::group_retaliation_episodes(events, classes, 48 * kHour);
        CHECK(eps.size() == 2);
    }
    SUBCASE("missing tags still group, flagged unverified") {
        for (auto& ev : events) ev.beneficiary.clear();
        auto eps = ingest::group_retaliation_episodes(events, classes, 48 * kHour);
        REQUIRE(eps.size() == 1);
        CHECK(eps[0].length() == 4);
        CHECK(!eps[0].alternation_verified);
    }
    SUBCASE("different chains never share an episode") {
        events[1].chain_id = "LCC";
        events[3].chain_id = "LCC";
        events[2].beneficiary = "addr-b";  // keep each chain's pair alternating
        events[3].beneficiary = "addr-a";
        auto eps = ingest::group_retaliation_episodes(events, classes, 48 * kHour);
        REQUIRE(eps.size() == 2);
        CHECK(eps[0].events[0].chain_id == eps[0].events[1].chain_id);
        CHECK(eps[1].events[0].chain_id == eps[1].events[1].chain_id);
    }
}

TEST_CASE("every double-spend falls in exactly one episode") {
    auto log = synthetic_log();
    auto classes = ingest::classify_events(log, 10, true);
    auto episodes = ingest::group_retaliation_episodes(log, classes, 48 * kHour);
    std::size_t spends = 0;
    for (auto c : classes) spends += c == EventClass::DoubleSpend;
    std::size_t grouped = 0;
    for (const auto& ep : episodes) {
        grouped += ep.length();
        for (const auto& ev : ep.events) CHECK(ev.depth >= 10);
    }
    CHECK(grouped == spends);
}

TEST_CASE("summaries reproduce the per-chain tallies") {
    auto log = synthetic_log();
    auto classes = ingest::classify_events(log, 10, true);
    auto summaries = ingest::summarize(log, classes);
    REQUIRE(summaries.size() == 2);
    CHECK(summaries[0].chain_id == "BTG");
    CHECK(summaries[0].attacks == 2);
    CHECK(summaries[0].total_usd == Rational(70000));
    CHECK(summaries[1].chain_id == "LCC");
    CHECK(summaries[1].attacks == 6);
    CHECK(summaries[1].total_usd == Rational(50000));
    CHECK(summaries[1].first_timestamp < summaries[1].last_timestamp);

    SUBCASE("totals ignore input order") {
        auto shuffled = log;
        std::mt19937 rng(7);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto cls = ingest::classify_events(shuffled, 10, true);
        auto again = ingest::summarize(shuffled, cls);
        REQUIRE(again.size() == 2);
        CHECK(again[0].total_usd == summaries[0].total_usd);
        CHECK(again[1].total_usd == summaries[1].total_usd);
        CHECK(again[0].first_timestamp == summaries[0].first_timestamp);
    }
    SUBCASE("no double-spends, no rows") {
        auto none = ingest::classify_events(log, 200, true);
        CHECK(ingest::summarize(log, none).empty());
    }
}

TEST_CASE("serialization is byte-stable") {
    auto log = synthetic_log();
    std::string csv = ingest::serialize_csv(log);
    auto parsed = ingest::parse_reorg_log(csv, ingest::Format::Csv);
    CHECK(parsed == log);
    CHECK(ingest::serialize_csv(parsed) == csv);
}
