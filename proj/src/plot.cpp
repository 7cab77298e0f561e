#include "retal/plot.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace retal::plot {

namespace {

struct Point {
    std::int64_t x;
    std::int64_t depth;
    bool double_spend;
};

std::vector<Point> collect(std::span<const ingest::ReorgEvent> events,
                           std::span<const ingest::EventClass> classes, XAxis x) {
    if (events.size() != classes.size())
        throw std::invalid_argument("plot: events and classifications differ in length");
    std::vector<Point> pts;
    pts.reserve(events.size());
    for (std::size_t i = 0; i < events.size(); ++i)
        pts.push_back({x == XAxis::Height ? events[i].height : events[i].timestamp,
                       events[i].depth, classes[i] == ingest::EventClass::DoubleSpend});
    std::stable_sort(pts.begin(), pts.end(),
                     [](const Point& a, const Point& b) { return a.x < b.x; });
    return pts;
}

}  // namespace

std::string scatter_csv(std::span<const ingest::ReorgEvent> events,
                        std::span<const ingest::EventClass> classes, XAxis x) {
    auto pts = collect(events, classes, x);
    std::string out = "x,depth,series\n";
    for (const auto& p : pts)
        out += std::to_string(p.x) + "," + std::to_string(p.depth) + "," +
               (p.double_spend ? "double_spend" : "random") + "\n";
    return out;
}

std::string scatter_svg(std::span<const ingest::ReorgEvent> events,
                        std::span<const ingest::EventClass> classes, XAxis x) {
    auto pts = collect(events, classes, x);
    const int w = 720, h = 420, margin = 48;
    std::int64_t xmin = 0, xmax = 1, ymax = 1;
    if (!pts.empty()) {
        xmin = pts.front().x;
        xmax = pts.back().x;
        for (const auto& p : pts) ymax = std::max(ymax, p.depth);
    }
    if (xmax == xmin) xmax = xmin + 1;

    auto sx = [&](std::int64_t v) {
        return margin + (double)(v - xmin) / (double)(xmax - xmin) * (w - 2 * margin);
    };
    auto sy = [&](std::int64_t d) {
        return h - margin - (double)d / (double)ymax * (h - 2 * margin);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(h) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    svg += "<line x1=\"" + std::to_string(margin) + "\" y1=\"" + std::to_string(h - margin) +
           "\" x2=\"" + std::to_string(w - margin) + "\" y2=\"" + std::to_string(h - margin) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + std::to_string(margin) + "\" y1=\"" + std::to_string(margin) +
           "\" x2=\"" + std::to_string(margin) + "\" y2=\"" + std::to_string(h - margin) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + std::to_string(margin) + "\" y=\"" + std::to_string(margin - 12) +
           "\" font-size=\"12\">reorg depth (max " + std::to_string(ymax) + ")</text>\n";
    for (const auto& p : pts) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"%s\"/>\n", sx(p.x),
                      sy(p.depth), p.double_spend ? "#d62728" : "#1f77b4");
        svg += buf;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace retal::plot
