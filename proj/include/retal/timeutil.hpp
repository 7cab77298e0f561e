#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace retal::timeutil {

/// Epoch seconds -> "YYYY-MM-DDTHH:MM:SSZ".
std::string format_utc(std::int64_t epoch_seconds);

/// Accepts plain epoch seconds or an ISO-8601 UTC timestamp
/// ("YYYY-MM-DDTHH:MM:SSZ", the seconds part optional). Throws
/// std::invalid_argument on anything else.
std::int64_t parse_utc(std::string_view text);

}  // namespace retal::timeutil
