#include <gtest/gtest.h>

#include <cmath>

#include "commlab/diagnostics.hpp"
#include "commlab/errors.hpp"
#include "commlab/rng.hpp"
#include "fixtures.hpp"

using namespace commlab;
using namespace commlab::testing;

namespace {

Partition random_partition(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::uint64_t> ids(n);
    for (auto& id : ids) id = rng.below(k);
    return Partition::from_assignment(std::span<const std::uint64_t>(ids));
}

/// Brute-force Rand-style pair counting, independent of the contingency route.
double pair_counting_ari(const Partition& a, const Partition& b) {
    const std::size_t n = a.size();
    double both = 0, only_a = 0, only_b = 0, pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool sa = a[i] == a[j], sb = b[i] == b[j];
            both += sa && sb;
            only_a += sa;
            only_b += sb;
            pairs += 1;
        }
    }
    const double expected = only_a * only_b / pairs;
    const double maximum = (only_a + only_b) / 2.0;
    return (both - expected) / (maximum - expected);
}

}  // namespace

TEST(PartitionSimilarity, Identity) {
    const Partition p = from_ids({0, 0, 1, 2, 2, 2});
    EXPECT_EQ(partition_similarity(p, p, SimilarityMetric::nmi), 1.0);
    EXPECT_EQ(partition_similarity(p, p, SimilarityMetric::ari), 1.0);
    EXPECT_EQ(partition_similarity(p, p, SimilarityMetric::vi), 0.0);
}

TEST(PartitionSimilarity, SingletonsAgainstOneCommunity) {
    EXPECT_EQ(partition_similarity(Partition::singletons(4), Partition::all_in_one(4), SimilarityMetric::nmi), 0.0);
    EXPECT_EQ(partition_similarity(Partition::singletons(4), Partition::all_in_one(4), SimilarityMetric::ari), 0.0);
    EXPECT_NEAR(partition_similarity(Partition::singletons(4), Partition::all_in_one(4), SimilarityMetric::vi),
                std::log(4.0), 1e-12);
}

TEST(PartitionSimilarity, IndependentSplitsHaveZeroNmi) {
    const Partition a = from_ids({0, 0, 1, 1});
    const Partition b = from_ids({0, 1, 0, 1});
    EXPECT_NEAR(partition_similarity(a, b, SimilarityMetric::nmi), 0.0, 1e-12);
    // VI = H(a) + H(b) - 0 = 2 ln 2.
    EXPECT_NEAR(partition_similarity(a, b, SimilarityMetric::vi), 2.0 * std::log(2.0), 1e-12);
    EXPECT_NEAR(partition_similarity(a, b, SimilarityMetric::ari), -0.5, 1e-12);
}

TEST(PartitionSimilarity, LengthMismatch) {
    EXPECT_THROW(partition_similarity(Partition::singletons(3), Partition::singletons(4), SimilarityMetric::nmi),
                 ValidationError);
}

TEST(PartitionSimilarity, MetricProperties) {
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.below(40);
        const Partition a = random_partition(n, 1 + rng.below(6), rng);
        const Partition b = random_partition(n, 1 + rng.below(6), rng);
        const Partition c = random_partition(n, 1 + rng.below(6), rng);
        const double nmi_ab = partition_similarity(a, b, SimilarityMetric::nmi);
        EXPECT_GE(nmi_ab, 0.0);
        EXPECT_LE(nmi_ab, 1.0);
        EXPECT_NEAR(nmi_ab, partition_similarity(b, a, SimilarityMetric::nmi), 1e-12);
        EXPECT_LE(partition_similarity(a, b, SimilarityMetric::ari), 1.0 + 1e-12);
        const double vi_ab = partition_similarity(a, b, SimilarityMetric::vi);
        const double vi_bc = partition_similarity(b, c, SimilarityMetric::vi);
        const double vi_ac = partition_similarity(a, c, SimilarityMetric::vi);
        EXPECT_GE(vi_ab, 0.0);
        EXPECT_LE(vi_ac, vi_ab + vi_bc + 1e-12);
        if (a != b && !(a.community_count() == 1 && b.community_count() == 1)) {
            const double brute = pair_counting_ari(a, b);
            if (std::isfinite(brute)) {
                EXPECT_NEAR(partition_similarity(a, b, SimilarityMetric::ari), brute, 1e-12);
            }
        }
    }
}

TEST(PartitionSimilarity, AriInvariantUnderRelabeling) {
    const std::vector<std::uint64_t> raw{0, 0, 1, 1, 2, 2, 2};
    const std::vector<std::uint64_t> renamed{9, 9, 4, 4, 7, 7, 7};
    const Partition other = from_ids({0, 1, 1, 1, 2, 2, 0});
    const Partition a = Partition::from_assignment(std::span<const std::uint64_t>(raw));
    const Partition b = Partition::from_assignment(std::span<const std::uint64_t>(renamed));
    EXPECT_EQ(partition_similarity(a, other, SimilarityMetric::ari),
              partition_similarity(b, other, SimilarityMetric::ari));
}
