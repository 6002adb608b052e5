#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "commlab/errors.hpp"
#include "commlab/format.hpp"
#include "commlab/layout.hpp"

namespace commlab {

namespace {

std::array<int, 3> parse_hex(std::string_view hex) {
    std::array<int, 3> rgb{};
    for (int k = 0; k < 3; ++k) {
        rgb[k] = std::stoi(std::string(hex.substr(1 + 2 * k, 2)), nullptr, 16);
    }
    return rgb;
}

std::string escape_attribute(std::string_view raw) {
    std::string out;
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string community_color(CommunityId c) {
    const std::size_t cycle = c / kPalette.size();
    std::string_view base = kPalette[c % kPalette.size()];
    if (cycle == 0) return std::string(base);
    auto rgb = parse_hex(base);
    // Cycle 1 darkens by 25%, cycle 2 lightens by 25%, cycle 3 darkens by 50%, ...
    const double strength = std::min(0.75, 0.25 * static_cast<double>((cycle + 1) / 2));
    const double target = cycle % 2 == 1 ? 0.0 : 255.0;
    for (int& v : rgb) v = static_cast<int>(v + (target - v) * strength + 0.5);
    std::array<char, 8> buf{};
    std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return std::string(buf.data(), 7);
}

std::string render_svg(const Graph& g, const LayoutCoords& coords, const Partition& p,
                       const SvgOptions& options) {
    const std::size_t n = g.node_count();
    if (coords.points.size() != n || p.size() != n) {
        throw ValidationError("layout, partition and graph disagree on the node count");
    }
    const double span_x = options.width - 2.0 * options.margin;
    const double span_y = options.height - 2.0 * options.margin;
    const auto px = [&](NodeId i) { return format_fixed(options.margin + coords.points[i].x * span_x, 2); };
    const auto py = [&](NodeId i) { return format_fixed(options.margin + coords.points[i].y * span_y, 2); };
    const std::string w = format_fixed(options.width, 2);
    const std::string h = format_fixed(options.height, 2);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\""
        << escape_attribute(options.background) << "\"/>\n"
        << "<g id=\"edges\" stroke=\"" << escape_attribute(options.edge_color) << "\" stroke-opacity=\""
        << format_fixed(options.edge_opacity, 3) << "\" stroke-width=\"" << format_fixed(options.edge_width, 3)
        << "\">\n";
    g.for_each_edge([&](NodeId u, NodeId v, double) {
        svg << "<line x1=\"" << px(u) << "\" y1=\"" << py(u) << "\" x2=\"" << px(v) << "\" y2=\"" << py(v)
            << "\"/>\n";
    });
    svg << "</g>\n<g id=\"nodes\" stroke=\"#ffffff\" stroke-width=\"" << format_fixed(options.node_stroke_width, 3)
        << "\">\n";
    const std::string r = format_fixed(options.node_radius, 2);
    for (NodeId i = 0; i < n; ++i) {
        svg << "<circle cx=\"" << px(i) << "\" cy=\"" << py(i) << "\" r=\"" << r << "\" fill=\""
            << community_color(p[i]) << "\"><title>" << escape_attribute(g.label(i)) << "</title></circle>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace commlab
