#include "retal/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "retal/timeutil.hpp"

namespace retal::cfg {

namespace {

struct KeySpec {
    const char* section;
    const char* key;
};

// the complete configuration surface; parse_config rejects anything else
const KeySpec kKnownKeys[] = {
    {"econ", "block_reward"}, {"econ", "hash_cost"},     {"econ", "beta"},
    {"econ", "escrow"},       {"econ", "tx_value"},      {"econ", "kappa"},
    {"econ", "delta"},        {"econ", "honest_hashpower"},
    {"game", "v"},            {"game", "c"},             {"game", "r"},
    {"game", "decay"},
    {"sim", "mode"},          {"sim", "block_model"},    {"sim", "seed"},
    {"sim", "ticks_per_honest_block"},                   {"sim", "block_interval_seconds"},
    {"sim", "start_time"},    {"sim", "chain_id"},       {"sim", "fork_height"},
    {"ingest", "depth_threshold"},                       {"ingest", "require_conflict"},
    {"ingest", "window_hours"},                          {"ingest", "format"},
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::int64_t to_int(const std::string& section, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long n = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return n;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: " + section + "." + key + " must be an integer, got '" +
                                    v + "'");
    }
}

bool to_bool(const std::string& section, const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("config: " + section + "." + key + " must be true or false");
}

Rational to_rational(const std::string& section, const std::string& key, const std::string& v) {
    try {
        return Rational::parse(v);
    } catch (const std::exception& e) {
        throw std::invalid_argument("config: " + section + "." + key + ": " + e.what());
    }
}

std::string require(const KeyValues& kv, const std::string& section, const std::string& key) {
    auto v = kv.get(section, key);
    if (!v) throw std::invalid_argument("config: " + section + "." + key + " is required");
    return *v;
}

}  // namespace

void KeyValues::set(const std::string& section, const std::string& key,
                    const std::string& value) {
    if (!known_key(section, key))
        throw std::invalid_argument("config: unknown key '" + section + "." + key + "'");
    sections_[section][key] = value;
}

std::optional<std::string> KeyValues::get(const std::string& section,
                                          const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

bool KeyValues::has_section(const std::string& section) const {
    return sections_.count(section) > 0;
}

bool known_key(const std::string& section, const std::string& key) {
    for (const auto& spec : kKnownKeys)
        if (section == spec.section && key == spec.key) return true;
    return false;
}

KeyValues parse_config(std::istream& in) {
    KeyValues kv;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section != "econ" && section != "game" && section != "sim" &&
                section != "ingest")
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": unknown section [" + section + "]");
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        if (section.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": key outside any [section]");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (!known_key(section, key))
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + section + "." + key + "'");
        kv.set(section, key, value);
    }
    return kv;
}

KeyValues parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    return parse_config(in);
}

void apply_env(KeyValues& kv) {
    for (const auto& spec : kKnownKeys) {
        std::string name = "RETAL_";
        for (const char* p = spec.section; *p; ++p) name += (char)std::toupper(*p);
        name += '_';
        for (const char* p = spec.key; *p; ++p) name += (char)std::toupper(*p);
        if (const char* v = std::getenv(name.c_str())) kv.set(spec.section, spec.key, v);
    }
}

econ::EconParams build_econ(const KeyValues& kv) {
    econ::EconParams p;
    p.block_reward_pb = to_rational("econ", "block_reward", require(kv, "econ", "block_reward"));
    p.hash_cost_ch = to_rational("econ", "hash_cost", require(kv, "econ", "hash_cost"));
    p.beta = to_rational("econ", "beta", require(kv, "econ", "beta"));
    p.escrow_e = to_int("econ", "escrow", require(kv, "econ", "escrow"));
    p.tx_value_v = to_rational("econ", "tx_value", require(kv, "econ", "tx_value"));
    if (auto v = kv.get("econ", "kappa")) p.kappa = econ::MarketImpactFn::parse(*v);
    if (auto v = kv.get("econ", "delta")) p.delta = to_rational("econ", "delta", *v);
    if (auto v = kv.get("econ", "honest_hashpower"))
        p.honest_hashpower_n = to_rational("econ", "honest_hashpower", *v);
    else
        p.honest_hashpower_n = econ::free_entry_hashpower(p.block_reward_pb, p.hash_cost_ch);
    p.validate();
    return p;
}

game::GameParams build_game(const KeyValues& kv) {
    game::GameParams g;
    g.v = to_rational("game", "v", require(kv, "game", "v"));
    g.c = to_rational("game", "c", require(kv, "game", "c"));
    g.r = to_rational("game", "r", require(kv, "game", "r"));
    g.decay = decay::DecayFn::parse(require(kv, "game", "decay"));
    g.validate();
    return g;
}

sim::SimConfig build_sim(const KeyValues& kv) {
    sim::SimConfig cfg;
    cfg.econ = build_econ(kv);
    if (kv.has_section("game")) cfg.game = build_game(kv);
    std::string mode = kv.get("sim", "mode").value_or("stylized");
    if (mode == "stylized") {
        cfg.mode = sim::SimConfig::Mode::Stylized;
        cfg.block_model = sim::SimConfig::BlockModel::Deterministic;
    } else if (mode == "race") {
        cfg.mode = sim::SimConfig::Mode::Race;
        cfg.block_model = sim::SimConfig::BlockModel::Exponential;
    } else {
        throw std::invalid_argument("config: sim.mode must be stylized or race");
    }
    if (auto v = kv.get("sim", "block_model")) {
        if (*v == "deterministic") cfg.block_model = sim::SimConfig::BlockModel::Deterministic;
        else if (*v == "exponential") cfg.block_model = sim::SimConfig::BlockModel::Exponential;
        else throw std::invalid_argument("config: sim.block_model must be deterministic or exponential");
    }
    if (auto v = kv.get("sim", "seed"))
        cfg.seed = (std::uint64_t)to_int("sim", "seed", *v);
    if (auto v = kv.get("sim", "ticks_per_honest_block"))
        cfg.ticks_per_honest_block = to_int("sim", "ticks_per_honest_block", *v);
    if (auto v = kv.get("sim", "block_interval_seconds"))
        cfg.block_interval_seconds = to_int("sim", "block_interval_seconds", *v);
    if (auto v = kv.get("sim", "start_time")) cfg.start_timestamp = timeutil::parse_utc(*v);
    if (auto v = kv.get("sim", "chain_id")) cfg.chain_id = *v;
    if (auto v = kv.get("sim", "fork_height"))
        cfg.fork_height = to_int("sim", "fork_height", *v);
    cfg.validate();
    return cfg;
}

IngestSettings build_ingest(const KeyValues& kv) {
    IngestSettings s;
    if (auto v = kv.get("ingest", "depth_threshold"))
        s.depth_threshold = (int)to_int("ingest", "depth_threshold", *v);
    if (auto v = kv.get("ingest", "require_conflict"))
        s.require_conflict = to_bool("ingest", "require_conflict", *v);
    if (auto v = kv.get("ingest", "window_hours"))
        s.window_hours = to_rational("ingest", "window_hours", *v);
    if (auto v = kv.get("ingest", "format")) {
        if (*v == "csv") s.format = ingest::Format::Csv;
        else if (*v == "json") s.format = ingest::Format::Json;
        else throw std::invalid_argument("config: ingest.format must be csv or json");
    }
    return s;
}

}  // namespace retal::cfg
