#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "retal/rational.hpp"

namespace retal::ingest {

/// One observed chain reorganization.
struct ReorgEvent {
    std::string chain_id;
    std::int64_t timestamp = 0;  // UTC seconds
    std::int64_t height = 0;     // height at which the replacement starts
    std::int64_t depth = 0;      // blocks removed, >= 1
    std::int64_t blocks_added = 0;  // >= depth
    bool conflicting_spend = false;
    Rational value_usd;          // > 0 implies conflicting_spend
    std::string beneficiary;     // optional address tag

    void validate() const;
    friend bool operator==(const ReorgEvent&, const ReorgEvent&) = default;
};

enum class Format { Csv, Json };

/// Parse failure with the 1-based row (CSV) or element index (JSON) and the
/// offending field.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t row, std::string field, const std::string& what)
        : std::runtime_error("row " + std::to_string(row) +
                             (field.empty() ? "" : ", field '" + field + "'") + ": " + what),
          row_(row),
          field_(std::move(field)) {}
    std::size_t row() const { return row_; }
    const std::string& field() const { return field_; }

private:
    std::size_t row_;
    std::string field_;
};

inline constexpr const char* kCsvHeader =
    "chain,timestamp,height,depth,blocks_added,conflicting_spend,value_usd,beneficiary";

std::vector<ReorgEvent> parse_reorg_log(std::istream& in, Format format);
std::vector<ReorgEvent> parse_reorg_log(const std::string& text, Format format);

/// Byte-stable CSV emission (ISO-8601 timestamps, exact decimal values).
/// Logs produced here parse back losslessly.
std::string serialize_csv(std::span<const ReorgEvent> events);

enum class EventClass { Random, DoubleSpend };

/// DoubleSpend iff depth >= depth_threshold and (conflicting_spend or
/// require_conflict is off); everything else is a random reorg.
/// depth_threshold must be >= 2.
std::vector<EventClass> classify_events(std::span<const ReorgEvent> events,
                                        int depth_threshold, bool require_conflict);

struct Episode {
    std::vector<ReorgEvent> events;  // time-ordered
    bool alternation_verified = false;

    std::size_t length() const { return events.size(); }
    bool single_attack() const { return events.size() == 1; }
};

/// Groups double-spend events into episodes: consecutive events on one chain
/// within the window, with alternating beneficiaries where tags are present.
/// Untagged neighbours group on time alone and leave the episode marked
/// alternation-unverified. Every double-spend lands in exactly one episode.
std::vector<Episode> group_retaliation_episodes(std::span<const ReorgEvent> events,
                                                std::span<const EventClass> classes,
                                                std::int64_t window_seconds);

struct ChainSummary {
    std::string chain_id;
    std::int64_t first_timestamp = 0;
    std::int64_t last_timestamp = 0;
    std::int64_t attacks = 0;
    Rational total_usd;
};

/// Per-chain double-spend counts and totals, ordered by chain id then date.
std::vector<ChainSummary> summarize(std::span<const ReorgEvent> events,
                                    std::span<const EventClass> classes);

}  // namespace retal::ingest
