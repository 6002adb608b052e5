// Compiled with -mavx2 only; callers reach it through the dispatch table
// after a runtime CPU check.
#include <immintrin.h>

#include "tables.hpp"

namespace commlab::simd::detail {

namespace {

double modularity_terms(std::span<const double> internal, std::span<const double> total,
                        double inv_two_m) {
    const std::size_t n = internal.size();
    const std::size_t body = n - n % kLanes;
    const __m256d inv = _mm256_set1_pd(inv_two_m);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t c = 0; c < body; c += kLanes) {
        const __m256d share = _mm256_mul_pd(_mm256_loadu_pd(total.data() + c), inv);
        const __m256d in = _mm256_mul_pd(_mm256_loadu_pd(internal.data() + c), inv);
        acc = _mm256_add_pd(acc, _mm256_sub_pd(in, _mm256_mul_pd(share, share)));
    }
    double lanes[kLanes];
    _mm256_storeu_pd(lanes, acc);
    for (std::size_t c = body; c < n; ++c) {
        const double share = total[c] * inv_two_m;
        lanes[c % kLanes] += internal[c] * inv_two_m - share * share;
    }
    return fold_lanes(lanes);
}

void repulsion(std::span<const double> xs, std::span<const double> ys, std::size_t i, double k2,
               double min_dist2, double* fx, double* fy) {
    const std::size_t n = xs.size();
    const std::size_t body = n - n % kLanes;
    const double xi = xs[i];
    const double yi = ys[i];
    const __m256d vxi = _mm256_set1_pd(xi);
    const __m256d vyi = _mm256_set1_pd(yi);
    const __m256d vk2 = _mm256_set1_pd(k2);
    const __m256d vmin = _mm256_set1_pd(min_dist2);
    __m256d ax = _mm256_setzero_pd();
    __m256d ay = _mm256_setzero_pd();
    for (std::size_t j = 0; j < body; j += kLanes) {
        const __m256d dx = _mm256_sub_pd(vxi, _mm256_loadu_pd(xs.data() + j));
        const __m256d dy = _mm256_sub_pd(vyi, _mm256_loadu_pd(ys.data() + j));
        __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        d2 = _mm256_max_pd(d2, vmin);
        const __m256d s = _mm256_div_pd(vk2, d2);
        ax = _mm256_add_pd(ax, _mm256_mul_pd(dx, s));
        ay = _mm256_add_pd(ay, _mm256_mul_pd(dy, s));
    }
    double lx[kLanes];
    double ly[kLanes];
    _mm256_storeu_pd(lx, ax);
    _mm256_storeu_pd(ly, ay);
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
    const std::size_t body = n - n % 8;
    const __m256i v = _mm256_set1_epi32(static_cast<int>(value));
    for (std::size_t j = 0; j < body; j += 8) {
        const auto* src = reinterpret_cast<const __m256i*>(labels.data() + j);
        auto* dst = reinterpret_cast<__m256i*>(counts.data() + j);
        // Equal lanes compare to all-ones, i.e. -1; subtracting adds one.
        const __m256i eq = _mm256_cmpeq_epi32(_mm256_loadu_si256(src), v);
        _mm256_storeu_si256(dst, _mm256_sub_epi32(_mm256_loadu_si256(dst), eq));
    }
    for (std::size_t j = body; j < n; ++j) counts[j] += labels[j] == value ? 1u : 0u;
}

}  // namespace

const KernelTable avx2_table{Backend::avx2, &modularity_terms, &repulsion, &count_equal};

}  // namespace commlab::simd::detail
