#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "commlab/graph.hpp"
#include "commlab/partition.hpp"

namespace commlab {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct LayoutCoords {
    std::vector<Point> points;
};

/// Layout runs in a unit-area frame: ideal edge length k = sqrt(1 / N),
/// starting temperature 0.1, cooled linearly to zero.
double ideal_edge_length(std::size_t node_count);

/// Fruchterman-Reingold placement. Attraction d^2/k along edges (scaled by
/// edge weight), repulsion k^2/d between all pairs, displacement per step
/// capped by the temperature. With `normalize`, the result is scaled
/// uniformly into [0,1]^2 and centered; a single node lands on (0.5, 0.5).
LayoutCoords fruchterman_reingold(const Graph& g, std::uint64_t seed, std::size_t iterations,
                                  bool normalize = true);

struct SvgOptions {
    double width = 1000.0;
    double height = 1000.0;
    double margin = 20.0;
    double node_radius = 3.0;
    double edge_width = 0.3;
    double node_stroke_width = 0.2;
    std::string edge_color = "#9a9a9a";
    double edge_opacity = 0.5;
    std::string background = "#ffffff";
};

/// 16 categorical fills, indexed by community id.
inline constexpr std::array<std::string_view, 16> kPalette = {
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45",
    "#fabed4", "#469990", "#dcbeff", "#9a6324", "#fffac8", "#800000", "#aaffc3", "#000075",
};

/// Fill for community `c`: kPalette[c % 16] on the first cycle; later cycles
/// alternate darker and lighter shifts of growing strength.
std::string community_color(CommunityId c);

/// SVG 1.1 document: edges as <line> beneath nodes as <circle> (label in a
/// <title> child), in node and
/// edge order. A self-loop draws as a zero-length line, so the document
/// always holds N circles and edge_count() lines.
std::string render_svg(const Graph& g, const LayoutCoords& coords, const Partition& p,
                       const SvgOptions& options = {});

/// `label x y` per node, shortest round-trip decimals.
void write_coords_tsv(std::ostream& out, const Graph& g, const LayoutCoords& coords);

}  // namespace commlab
