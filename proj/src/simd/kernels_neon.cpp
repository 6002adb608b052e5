// AArch64 backend. Each 4-lane accumulator is a pair of float64x2 registers
// (lanes 0-1 and 2-3) so the schedule matches the scalar reference.
#include <arm_neon.h>

#include "tables.hpp"

namespace commlab::simd::detail {

namespace {

double modularity_terms(std::span<const double> internal, std::span<const double> total,
                        double inv_two_m) {
    const std::size_t n = internal.size();
    const std::size_t body = n - n % kLanes;
    const float64x2_t inv = vdupq_n_f64(inv_two_m);
    float64x2_t lo = vdupq_n_f64(0.0);
    float64x2_t hi = vdupq_n_f64(0.0);
    for (std::size_t c = 0; c < body; c += kLanes) {
        const float64x2_t s0 = vmulq_f64(vld1q_f64(total.data() + c), inv);
        const float64x2_t s1 = vmulq_f64(vld1q_f64(total.data() + c + 2), inv);
        const float64x2_t i0 = vmulq_f64(vld1q_f64(internal.data() + c), inv);
        const float64x2_t i1 = vmulq_f64(vld1q_f64(internal.data() + c + 2), inv);
        lo = vaddq_f64(lo, vsubq_f64(i0, vmulq_f64(s0, s0)));
        hi = vaddq_f64(hi, vsubq_f64(i1, vmulq_f64(s1, s1)));
    }
    double lanes[kLanes];
    vst1q_f64(lanes, lo);
    vst1q_f64(lanes + 2, hi);
    for (std::size_t c = body; c < n; ++c) {
        const double share = total[c] * inv_two_m;
        lanes[c % kLanes] += internal[c] * inv_two_m - share * share;
    }
    return fold_lanes(lanes);
}

inline float64x2_t repulsion_step(float64x2_t d, float64x2_t dx, float64x2_t dy, float64x2_t vk2,
                                  float64x2_t vmin, float64x2_t* ay) {
    float64x2_t d2 = vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
    d2 = vmaxq_f64(d2, vmin);
    const float64x2_t s = vdivq_f64(vk2, d2);
    *ay = vaddq_f64(*ay, vmulq_f64(dy, s));
    return vaddq_f64(d, vmulq_f64(dx, s));
}

void repulsion(std::span<const double> xs, std::span<const double> ys, std::size_t i, double k2,
               double min_dist2, double* fx, double* fy) {
    const std::size_t n = xs.size();
    const std::size_t body = n - n % kLanes;
    const double xi = xs[i];
    const double yi = ys[i];
    const float64x2_t vxi = vdupq_n_f64(xi);
    const float64x2_t vyi = vdupq_n_f64(yi);
    const float64x2_t vk2 = vdupq_n_f64(k2);
    const float64x2_t vmin = vdupq_n_f64(min_dist2);
    float64x2_t ax_lo = vdupq_n_f64(0.0), ax_hi = vdupq_n_f64(0.0);
    float64x2_t ay_lo = vdupq_n_f64(0.0), ay_hi = vdupq_n_f64(0.0);
    for (std::size_t j = 0; j < body; j += kLanes) {
        const float64x2_t dx0 = vsubq_f64(vxi, vld1q_f64(xs.data() + j));
        const float64x2_t dy0 = vsubq_f64(vyi, vld1q_f64(ys.data() + j));
        const float64x2_t dx1 = vsubq_f64(vxi, vld1q_f64(xs.data() + j + 2));
        const float64x2_t dy1 = vsubq_f64(vyi, vld1q_f64(ys.data() + j + 2));
        ax_lo = repulsion_step(ax_lo, dx0, dy0, vk2, vmin, &ay_lo);
        ax_hi = repulsion_step(ax_hi, dx1, dy1, vk2, vmin, &ay_hi);
    }
    double lx[kLanes];
    double ly[kLanes];
    vst1q_f64(lx, ax_lo);
    vst1q_f64(lx + 2, ax_hi);
    vst1q_f64(ly, ay_lo);
    vst1q_f64(ly + 2, ay_hi);
    for (std::size_t j = body; j < n; ++j) {
        const double dx = xi - xs[j];
        const double dy = yi - ys[j];
        double d2 = dx * dx + dy * dy;
        d2 = d2 < min_dist2 ? min_dist2 : d2;
        const double s = k2 / d2;
        lx[j % kLanes] += dx * s;
        ly[j % kLanes] += dy * s;
    }
    *fx = fold_lanes(lx);
    *fy = fold_lanes(ly);
}

void count_equal(std::span<const std::uint32_t> labels, std::uint32_t value,
                 std::span<std::uint32_t> counts) {
    const std::size_t n = labels.size();
    const std::size_t body = n - n % 4;
    const uint32x4_t v = vdupq_n_u32(value);
    for (std::size_t j = 0; j < body; j += 4) {
        const uint32x4_t eq = vceqq_u32(vld1q_u32(labels.data() + j), v);
        vst1q_u32(counts.data() + j, vsubq_u32(vld1q_u32(counts.data() + j), eq));
    }
    for (std::size_t j = body; j < n; ++j) counts[j] += labels[j] == value ? 1u : 0u;
}

}  // namespace

const KernelTable neon_table{Backend::neon, &modularity_terms, &repulsion, &count_equal};

}  // namespace commlab::simd::detail
