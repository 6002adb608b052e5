#include <algorithm>
#include <cmath>
#include <ostream>

#include "commlab/errors.hpp"
#include "commlab/format.hpp"
#include "commlab/layout.hpp"
#include "commlab/rng.hpp"
#include "commlab/simd/kernels.hpp"

namespace commlab {

namespace {

constexpr double kArea = 1.0;
constexpr double kInitialTemperature = 0.1;  // times sqrt(area)

void normalize_into_unit_square(std::vector<double>& xs, std::vector<double>& ys) {
    const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    const double x0 = *xmin, y0 = *ymin;
    const double wx = *xmax - x0, wy = *ymax - y0;
    const double scale = std::max(wx, wy);
    if (!(scale > 0.0)) {
        std::fill(xs.begin(), xs.end(), 0.5);
        std::fill(ys.begin(), ys.end(), 0.5);
        return;
    }
    const double ox = (1.0 - wx / scale) / 2.0;
    const double oy = (1.0 - wy / scale) / 2.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = std::clamp((xs[i] - x0) / scale + ox, 0.0, 1.0);
        ys[i] = std::clamp((ys[i] - y0) / scale + oy, 0.0, 1.0);
    }
}

}  // namespace

double ideal_edge_length(std::size_t node_count) {
    return std::sqrt(kArea / static_cast<double>(std::max<std::size_t>(node_count, 1)));
}

LayoutCoords fruchterman_reingold(const Graph& g, std::uint64_t seed, std::size_t iterations,
                                  bool normalize) {
    const std::size_t n = g.node_count();
    if (n == 0) return {};
    if (iterations == 0) throw ValidationError("layout needs at least one iteration");

    const double k = ideal_edge_length(n);
    const double k2 = k * k;
    // Floor on squared distance keeps coincident points finite.
    const double min_dist2 = 1e-8 * k2;
    const double t0 = kInitialTemperature * std::sqrt(kArea);

    Rng rng(seed);
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = rng.uniform();
        ys[i] = rng.uniform();
    }
    std::vector<double> dx(n), dy(n);
    const auto& kernels = simd::kernels();

    for (std::size_t it = 0; it < iterations; ++it) {
        const double temperature =
            t0 * (1.0 - static_cast<double>(it) / static_cast<double>(iterations));
        for (std::size_t i = 0; i < n; ++i) kernels.repulsion(xs, ys, i, k2, min_dist2, &dx[i], &dy[i]);
        g.for_each_edge([&](NodeId u, NodeId v, double w) {
            if (u == v) return;
            const double ex = xs[u] - xs[v];
            const double ey = ys[u] - ys[v];
            const double dist = std::sqrt(ex * ex + ey * ey);
            // (e / |e|) * |e|^2 / k
            const double s = w * dist / k;
            dx[u] -= ex * s;
            dy[u] -= ey * s;
            dx[v] += ex * s;
            dy[v] += ey * s;
        });
        for (std::size_t i = 0; i < n; ++i) {
            const double len = std::sqrt(dx[i] * dx[i] + dy[i] * dy[i]);
            if (len > 0.0) {
                const double step = std::min(len, temperature) / len;
                xs[i] += dx[i] * step;
                ys[i] += dy[i] * step;
            }
        }
    }
    if (normalize) normalize_into_unit_square(xs, ys);

    LayoutCoords coords;
    coords.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) coords.points[i] = {xs[i], ys[i]};
    return coords;
}

void write_coords_tsv(std::ostream& out, const Graph& g, const LayoutCoords& coords) {
    if (coords.points.size() != g.node_count()) throw ValidationError("coordinate count does not match graph");
    for (NodeId i = 0; i < g.node_count(); ++i) {
        out << g.label(i) << '\t' << format_shortest(coords.points[i].x) << '\t'
            << format_shortest(coords.points[i].y) << '\n';
    }
}

}  // namespace commlab
