#pragma once

#include <span>
#include <string>

#include "retal/ingest.hpp"

namespace retal::plot {

enum class XAxis { Height, Timestamp };

/// Two-series scatter data (random vs double-spend), sorted by x.
/// Header: x,depth,series. Empty input gives just the header.
std::string scatter_csv(std::span<const ingest::ReorgEvent> events,
                        std::span<const ingest::EventClass> classes, XAxis x);

/// Minimal SVG rendering of the same points: distinguishable dots for the two
/// series, no styling guarantees beyond that.
std::string scatter_svg(std::span<const ingest::ReorgEvent> events,
                        std::span<const ingest::EventClass> classes, XAxis x);

}  // namespace retal::plot
