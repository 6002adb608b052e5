#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace commlab {

/// Deterministic generator used everywhere a seed appears.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The distribution helpers below are implemented here rather than
/// taken from <random>, whose distributions differ between standard
/// libraries; together this pins every random decision across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). `bound` must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// True with probability `p`; p <= 0 never fires, p >= 1 always does.
    bool bernoulli(double p) { return uniform() < p; }

    /// Fisher-Yates, drawing from the back.
    template <typename T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(values[i - 1], values[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Combines a base seed with stream coordinates (level, sweep, round, ...)
/// into an independent seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) noexcept;

}  // namespace commlab
