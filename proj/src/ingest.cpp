#include "retal/ingest.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "retal/timeutil.hpp"

namespace retal::ingest {

void ReorgEvent::validate() const {
    if (chain_id.empty()) throw std::invalid_argument("reorg event: empty chain id");
    if (depth < 1) throw std::invalid_argument("reorg event: depth must be >= 1");
    if (blocks_added < depth)
        throw std::invalid_argument("reorg event: a heavier replacement adds at least as many "
                                    "blocks as it removes");
    if (value_usd < Rational(0))
        throw std::invalid_argument("reorg event: value must be >= 0");
    if (value_usd > Rational(0) && !conflicting_spend)
        throw std::invalid_argument("reorg event: a value transfer implies a conflicting spend");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

const char* kFieldNames[8] = {"chain",             "timestamp", "height",    "depth",
                              "blocks_added",      "conflicting_spend", "value_usd", "beneficiary"};

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw std::invalid_argument("expected true/false");
}

std::int64_t parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("expected an integer");
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("expected an integer");
    return v;
}

ReorgEvent event_from_fields(const std::vector<std::string>& f, std::size_t row) {
    ReorgEvent ev;
    std::size_t col = 0;
    try {
        ev.chain_id = f[col];
        ++col;
        ev.timestamp = timeutil::parse_utc(f[col]);
        ++col;
        ev.height = parse_int(f[col]);
        ++col;
        ev.depth = parse_int(f[col]);
        ++col;
        ev.blocks_added = parse_int(f[col]);
        ++col;
        ev.conflicting_spend = parse_bool(f[col]);
        ++col;
        ev.value_usd = Rational::parse(f[col]);
        ++col;
        ev.beneficiary = f[col];
    } catch (const std::exception& e) {
        throw ParseError(row, kFieldNames[col], e.what());
    }
    try {
        ev.validate();
    } catch (const std::exception& e) {
        throw ParseError(row, "", e.what());
    }
    return ev;
}

std::vector<ReorgEvent> parse_csv(std::istream& in) {
    std::vector<ReorgEvent> events;
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(1, "", "missing header; expected: " + std::string(kCsvHeader));
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line != kCsvHeader)
        throw ParseError(1, "", "bad header; expected: " + std::string(kCsvHeader));
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 8)
            throw ParseError(row, "", "expected 8 comma-separated fields, got " +
                                          std::to_string(fields.size()));
        events.push_back(event_from_fields(fields, row));
    }
    return events;
}

std::vector<ReorgEvent> parse_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ParseError(0, "", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError(0, "", "expected a JSON array of events");
    std::vector<ReorgEvent> events;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& obj = doc[i];
        std::size_t row = i + 1;
        if (!obj.is_object()) throw ParseError(row, "", "expected an object");
        auto fetch = [&](const char* key) -> const nlohmann::json& {
            auto it = obj.find(key);
            if (it == obj.end()) throw ParseError(row, key, "missing field");
            return *it;
        };
        ReorgEvent ev;
        const char* cur = "chain";
        try {
            ev.chain_id = fetch("chain").get<std::string>();
            cur = "timestamp";
            const auto& ts = fetch("timestamp");
            ev.timestamp = ts.is_string() ? timeutil::parse_utc(ts.get<std::string>())
                                          : ts.get<std::int64_t>();
            cur = "height";
            ev.height = fetch("height").get<std::int64_t>();
            cur = "depth";
            ev.depth = fetch("depth").get<std::int64_t>();
            cur = "blocks_added";
            ev.blocks_added = fetch("blocks_added").get<std::int64_t>();
            cur = "conflicting_spend";
            ev.conflicting_spend = fetch("conflicting_spend").get<bool>();
            cur = "value_usd";
            const auto& val = fetch("value_usd");
            ev.value_usd = val.is_string() ? Rational::parse(val.get<std::string>())
                                           : Rational::parse(val.dump());
            cur = "beneficiary";
            if (obj.contains("beneficiary") && !obj["beneficiary"].is_null())
                ev.beneficiary = obj["beneficiary"].get<std::string>();
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(row, cur, e.what());
        }
        try {
            ev.validate();
        } catch (const std::exception& e) {
            throw ParseError(row, "", e.what());
        }
        events.push_back(std::move(ev));
    }
    return events;
}

}  // namespace

std::vector<ReorgEvent> parse_reorg_log(std::istream& in, Format format) {
    return format == Format::Csv ? parse_csv(in) : parse_json(in);
}

std::vector<ReorgEvent> parse_reorg_log(const std::string& text, Format format) {
    std::istringstream in(text);
    return parse_reorg_log(in, format);
}

std::string serialize_csv(std::span<const ReorgEvent> events) {
    std::string out = kCsvHeader;
    out += "\n";
    for (const auto& ev : events) {
        out += ev.chain_id;
        out += ",";
        out += timeutil::format_utc(ev.timestamp);
        out += ",";
        out += std::to_string(ev.height);
        out += ",";
        out += std::to_string(ev.depth);
        out += ",";
        out += std::to_string(ev.blocks_added);
        out += ",";
        out += ev.conflicting_spend ? "true" : "false";
        out += ",";
        out += ev.value_usd.to_string();
        out += ",";
        out += ev.beneficiary;
        out += "\n";
    }
    return out;
}

std::vector<EventClass> classify_events(std::span<const ReorgEvent> events, int depth_threshold,
                                        bool require_conflict) {
    if (depth_threshold < 2)
        throw std::invalid_argument("classify: depth threshold must be >= 2 (depth-1 reorgs are "
                                    "routine)");
    std::vector<EventClass> out;
    out.reserve(events.size());
    for (const auto& ev : events) {
        bool deep = ev.depth >= depth_threshold;
        bool spend_ok = ev.conflicting_spend || !require_conflict;
        out.push_back(deep && spend_ok ? EventClass::DoubleSpend : EventClass::Random);
    }
    return out;
}

std::vector<Episode> group_retaliation_episodes(std::span<const ReorgEvent> events,
                                                std::span<const EventClass> classes,
                                                std::int64_t window_seconds) {
    if (events.size() != classes.size())
        throw std::invalid_argument("grouping: events and classifications differ in length");

    std::vector<const ReorgEvent*> spends;
    for (std::size_t i = 0; i < events.size(); ++i)
        if (classes[i] == EventClass::DoubleSpend) spends.push_back(&events[i]);
    std::stable_sort(spends.begin(), spends.end(), [](const ReorgEvent* a, const ReorgEvent* b) {
        if (a->chain_id != b->chain_id) return a->chain_id < b->chain_id;
        return a->timestamp < b->timestamp;
    });

    std::vector<Episode> episodes;
    for (const ReorgEvent* ev : spends) {
        bool chain_to_previous = false;
        if (!episodes.empty()) {
            const ReorgEvent& prev = episodes.back().events.back();
            bool tags = !prev.beneficiary.empty() && !ev->beneficiary.empty();
            bool alternates = !tags || prev.beneficiary != ev->beneficiary;
            chain_to_previous = prev.chain_id == ev->chain_id &&
                                ev->timestamp - prev.timestamp <= window_seconds && alternates;
            if (chain_to_previous && !tags) episodes.back().alternation_verified = false;
        }
        if (chain_to_previous) {
            episodes.back().events.push_back(*ev);
        } else {
            Episode e;
            e.events.push_back(*ev);
            e.alternation_verified = true;
            episodes.push_back(std::move(e));
        }
    }
    return episodes;
}

std::vector<ChainSummary> summarize(std::span<const ReorgEvent> events,
                                    std::span<const EventClass> classes) {
    if (events.size() != classes.size())
        throw std::invalid_argument("summarize: events and classifications differ in length");
    std::map<std::string, ChainSummary> by_chain;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (classes[i] != EventClass::DoubleSpend) continue;
        const auto& ev = events[i];
        auto [it, fresh] = by_chain.try_emplace(ev.chain_id);
        ChainSummary& s = it->second;
        if (fresh) {
            s.chain_id = ev.chain_id;
            s.first_timestamp = ev.timestamp;
            s.last_timestamp = ev.timestamp;
        } else {
            s.first_timestamp = std::min(s.first_timestamp, ev.timestamp);
            s.last_timestamp = std::max(s.last_timestamp, ev.timestamp);
        }
        s.attacks += 1;
        s.total_usd += ev.value_usd;
    }
    std::vector<ChainSummary> out;
    out.reserve(by_chain.size());
    for (auto& [_, s] : by_chain) out.push_back(std::move(s));
    return out;
}

}  // namespace retal::ingest
