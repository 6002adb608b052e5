// Reference kernels. The lane schedule here is the contract the vector
// backends reproduce bit for bit.
#include "tables.hpp"

namespace commlab::simd::detail {

namespace {

double modularity_terms(std::span<const double> internal, std::span<const double> total,
                        double inv_two_m) {
    double lanes[kLanes] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t c = 0; c < internal.size(); ++c) {
        const double share = total[c] * inv_two_m;
        lanes[c % kLanes] += internal[c] * inv_two_m - share * share;
    }
    return fold_lanes(lanes);
}

void repulsion(std::span<const double> xs, std::span<const double> ys, std::size_t i, double k2,
               double min_dist2, double* fx, double* fy) {
    const double xi = xs[i];
    const double yi = ys[i];
    double ax[kLanes] = {0.0, 0.0, 0.0, 0.0};
    double ay[kLanes] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < xs.size(); ++j) {
        const double dx = xi - xs[j];
        const double dy = yi - ys[j];
        double d2 = dx * dx + dy * dy;
        d2 = d2 < min_dist2 ? min_dist2 : d2;
        const double s = k2 / d2;
        ax[j % kLanes] += dx * s;
        ay[j % kLanes] += dy * s;
    }
    *fx = fold_lanes(ax);
    *fy = fold_lanes(ay);
}

void count_equal(std::span<const std::uint32_t> labels, std::uint32_t value,
                 std::span<std::uint32_t> counts) {
    for (std::size_t j = 0; j < labels.size(); ++j) counts[j] += labels[j] == value ? 1u : 0u;
}

}  // namespace

const KernelTable scalar_table{Backend::scalar, &modularity_terms, &repulsion, &count_equal};

}  // namespace commlab::simd::detail
