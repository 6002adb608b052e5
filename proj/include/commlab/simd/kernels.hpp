#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace commlab::simd {

/// Data-parallel inner loops behind modularity, layout and co-classification.
///
/// Every backend accumulates in four interleaved lanes (element j goes to
/// lane j % 4) and folds them as (l0 + l1) + (l2 + l3). The scalar reference
/// follows the same schedule, so all backends return bit-identical results
/// and outputs never depend on the host CPU.
inline constexpr int kLanes = 4;

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b) noexcept;

struct KernelTable {
    Backend backend;

    /// sum_c (internal[c] * inv_two_m - (total[c] * inv_two_m)^2)
    double (*modularity_terms)(std::span<const double> internal, std::span<const double> total,
                               double inv_two_m);

    /// Fruchterman-Reingold repulsion on point i from all points:
    /// sum_j (p_i - p_j) * k2 / max(|p_i - p_j|^2, min_dist2).
    /// The j == i term vanishes because its displacement is zero.
    void (*repulsion)(std::span<const double> xs, std::span<const double> ys, std::size_t i,
                      double k2, double min_dist2, double* fx, double* fy);

    /// counts[j] += (labels[j] == value)
    void (*count_equal)(std::span<const std::uint32_t> labels, std::uint32_t value,
                        std::span<std::uint32_t> counts);
};

/// Backends compiled into this build and supported by the running CPU.
std::span<const Backend> available_backends();

/// Table for a specific backend; throws ValidationError if unavailable.
const KernelTable& kernels_for(Backend b);

/// Active table: the best available backend unless overridden through
/// set_active_backend() or the COMMLAB_SIMD environment variable
/// (`scalar`, `avx2`, `neon`, `auto`).
const KernelTable& kernels();

void set_active_backend(Backend b);

/// Parses a backend name; "auto" yields the best available backend.
Backend parse_backend(std::string_view name);

}  // namespace commlab::simd
