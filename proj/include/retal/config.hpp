#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "retal/econ.hpp"
#include "retal/game.hpp"
#include "retal/ingest.hpp"
#include "retal/sim.hpp"

namespace retal::cfg {

/// Raw configuration values, keyed by section and key. Precedence when
/// assembling: file < environment (RETAL_<SECTION>_<KEY>) < command-line
/// flags. Unknown sections or keys are errors.
class KeyValues {
public:
    void set(const std::string& section, const std::string& key, const std::string& value);
    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Keys accepted per section; anything else is rejected at load time.
bool known_key(const std::string& section, const std::string& key);

/// Plain-text config: [section] headers, key = value lines, '#' comments.
/// Throws with the offending line number on syntax errors or unknown keys.
KeyValues parse_config(std::istream& in);
KeyValues parse_config_file(const std::string& path);

/// Environment overrides: RETAL_ECON_BETA=2 sets econ.beta, and so on for
/// every known key (section and key upper-cased, '.' -> '_').
void apply_env(KeyValues& kv);

/// Typed builders. Each validates the assembled parameters.
econ::EconParams build_econ(const KeyValues& kv);
game::GameParams build_game(const KeyValues& kv);
sim::SimConfig build_sim(const KeyValues& kv);

struct IngestSettings {
    int depth_threshold = 10;
    bool require_conflict = true;
    Rational window_hours = Rational(48);
    ingest::Format format = ingest::Format::Csv;

    std::int64_t window_seconds() const { return (window_hours * Rational(3600)).floor(); }
};
IngestSettings build_ingest(const KeyValues& kv);

}  // namespace retal::cfg
