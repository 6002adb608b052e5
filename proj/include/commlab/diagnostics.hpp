#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "commlab/graph.hpp"
#include "commlab/louvain.hpp"
#include "commlab/partition.hpp"

namespace commlab {

/// Partition comparison metrics, natural logarithms throughout.
///
///   NMI = 2 I(U;V) / (H(U) + H(V)), defined as 1 when both entropies vanish
///   ARI = (sum_ij C(n_ij,2) - E) / ((a + b)/2 - E), E = a b / C(n,2),
///         a = sum_i C(u_i,2), b = sum_j C(v_j,2); 1 when the denominator
///         vanishes (only possible for identical trivial partitions)
///   VI  = H(U) + H(V) - 2 I(U;V)
enum class SimilarityMetric { nmi, ari, vi };

std::string_view metric_name(SimilarityMetric m) noexcept;
SimilarityMetric parse_metric(std::string_view name);
/// 1 for NMI and ARI, 0 for VI.
double self_similarity(SimilarityMetric m) noexcept;

double partition_similarity(const Partition& a, const Partition& b, SimilarityMetric metric);

/// Fraction of runs in which each pair of tracked nodes shares a community.
struct CoClassification {
    /// Tracked nodes, ascending. All nodes unless the graph exceeded the cap.
    std::vector<NodeId> nodes;
    bool sampled = false;
    std::size_t runs = 0;
    /// Row-major nodes.size()^2 co-occurrence counts.
    std::vector<std::uint32_t> counts;

    std::size_t dimension() const noexcept { return nodes.size(); }
    double at(std::size_t a, std::size_t b) const {
        return static_cast<double>(counts[a * nodes.size() + b]) / static_cast<double>(runs);
    }
};

/// Co-classification over `partitions`. Graphs with more than `cap` nodes
/// track a uniform sample of `cap` nodes drawn with Rng(sample_seed).
CoClassification co_classification(std::span<const Partition> partitions, std::size_t cap,
                                   std::uint64_t sample_seed);

struct EnsembleRun {
    std::uint64_t seed = 0;
    double q = 0.0;
    std::size_t communities = 0;
    /// Community sizes, descending.
    std::vector<std::size_t> sizes;
    Partition partition;
};

struct EnsembleSummary {
    double q_mean = 0.0, q_min = 0.0, q_max = 0.0;
    /// Over distinct run pairs.
    double similarity_mean = 0.0, similarity_min = 0.0, similarity_max = 0.0;
};

struct DiagnosticsReport {
    std::vector<EnsembleRun> runs;
    SimilarityMetric metric = SimilarityMetric::nmi;
    /// Row-major runs x runs similarity matrix.
    std::vector<double> pairwise;
    CoClassification coclassification;
    EnsembleSummary summary;

    double similarity(std::size_t a, std::size_t b) const { return pairwise[a * runs.size() + b]; }
};

struct EnsembleOptions {
    SimilarityMetric metric = SimilarityMetric::nmi;
    std::size_t coclassification_cap = 5000;
    std::uint64_t sample_seed = 0;
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
    LouvainOptions louvain;
};

/// One Louvain run per seed (in parallel), then the comparison statistics.
/// Needs at least two seeds. Output is independent of the thread count.
DiagnosticsReport run_ensemble(const Graph& g, std::span<const std::uint64_t> seeds,
                               const EnsembleOptions& options = {});

struct OracleResult {
    Partition partition;
    double q = 0.0;
    std::uint64_t partitions_evaluated = 0;
};

inline constexpr std::size_t kOracleMaxNodes = 12;

/// Exhaustive modularity maximum over all set partitions (restricted growth
/// strings). Ties within kMinGain go to the lexicographically smallest
/// canonical assignment.
OracleResult brute_force_best_partition(const Graph& g);

struct ResolutionProbeReport {
    std::size_t cliques = 0;
    std::size_t clique_size = 0;
    std::uint64_t seed = 0;
    double q_singleton_cliques = 0.0;
    double q_merged_pairs = 0.0;
    std::size_t louvain_community_count = 0;
    double louvain_q = 0.0;
    /// q_merged_pairs exceeds q_singleton_cliques by more than kMinGain.
    bool limit_manifested = false;
};

/// One community per clique of ring_of_cliques(c, k).
Partition clique_partition(std::size_t cliques, std::size_t clique_size);
/// Adjacent cliques merged pairwise (0+1, 2+3, ...); an odd last clique stays alone.
Partition merged_pairs_partition(std::size_t cliques, std::size_t clique_size);

ResolutionProbeReport resolution_probe(std::size_t cliques, std::size_t clique_size,
                                       std::uint64_t seed);

}  // namespace commlab
