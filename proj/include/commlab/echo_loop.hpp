#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "commlab/graph.hpp"
#include "commlab/louvain.hpp"
#include "commlab/partition.hpp"
#include "commlab/rng.hpp"

namespace commlab {

/// Unordered node pair, stored with u < v.
struct CandidateEdge {
    NodeId u = 0;
    NodeId v = 0;
    friend bool operator==(const CandidateEdge&, const CandidateEdge&) = default;
};

/// For every node in index order, up to `per_node` distinct non-neighbors
/// from its own community, sampled uniformly without replacement. A pair
/// already proposed from its other endpoint is not repeated.
std::vector<CandidateEdge> recommend_links(const Graph& g, const Partition& p, std::size_t per_node,
                                           Rng& rng);

/// Inter-community weight over total weight M (0 for an empty graph).
double mixing_ratio(const Graph& g, const Partition& p);

/// Copy of `g` plus unit-weight edges, labels preserved.
Graph add_edges(const Graph& g, std::span<const CandidateEdge> edges);

enum class DetectionSeedPolicy {
    /// Every round detects with the loop seed.
    fixed,
    /// Round r detects with derive_seed(seed, r).
    per_round,
};

std::string_view policy_name(DetectionSeedPolicy policy) noexcept;
DetectionSeedPolicy parse_policy(std::string_view name);

struct LoopConfig {
    std::size_t rounds = 10;
    std::size_t recommendations_per_node = 1;
    double acceptance_probability = 1.0;
    DetectionSeedPolicy detection = DetectionSeedPolicy::fixed;
    std::uint64_t seed = 0;
    /// Keep the partition and accepted edges of every round.
    bool keep_history = false;
};

struct LoopRecord {
    std::size_t round = 0;
    /// Q, community count and mixing ratio all describe the partition
    /// detected on this round's graph.
    double q = 0.0;
    std::size_t communities = 0;
    std::size_t edges_added = 0;
    double mixing_ratio = 0.0;
};

struct RoundHistory {
    /// Partition the recommendations were drawn from.
    Partition recommended_from;
    std::vector<CandidateEdge> added;
};

struct LoopTrajectory {
    /// Entry 0 is the initial detection before any rewiring.
    std::vector<LoopRecord> records;
    /// history[r - 1] belongs to round r; filled when keep_history is set.
    std::vector<RoundHistory> history;
    /// Partition detected in the last round.
    Partition final_partition;
    Graph final_graph;
};

/// Detect, recommend within communities, accept each candidate with the
/// configured probability, add accepted edges, re-detect; repeated for
/// `rounds` rounds. Detection restarts from singletons every round.
LoopTrajectory simulate_loop(const Graph& g, const LoopConfig& config);

/// `round,q,communities,edges_added,mixing_ratio` with a header line.
void write_trajectory_csv(std::ostream& out, const LoopTrajectory& trajectory);

}  // namespace commlab
