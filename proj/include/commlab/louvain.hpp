#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "commlab/graph.hpp"
#include "commlab/modularity.hpp"
#include "commlab/partition.hpp"

namespace commlab {

enum class MoveRule {
    /// Move to the neighboring community with the largest gain; ties go to
    /// the smallest community id.
    best_improvement,
    /// Move to the first neighboring community (in adjacency order) whose
    /// gain exceeds the threshold.
    first_improvement,
};

struct LouvainOptions {
    MoveRule rule = MoveRule::best_improvement;
    /// After the last level, run one more local-move phase on the input
    /// graph starting from the projected partition. Off by default: the
    /// level loop alone can leave single nodes that would gain by moving,
    /// because upper levels only move whole communities.
    bool refine_final = false;
};

struct LocalMoveStats {
    std::size_t moves = 0;
    std::size_t sweeps = 0;
    bool improved = false;
};

/// Sweeps the nodes until a full sweep moves nothing. Each sweep visits the
/// nodes in a fresh permutation drawn from Rng(derive_seed(seed, level,
/// sweep)); a non-empty `fixed_order` replaces the permutation for every
/// sweep. Nodes of degree zero never move.
LocalMoveStats local_move_phase(const Graph& g, CommunityState& state, std::uint64_t seed,
                                std::uint32_t level, const LouvainOptions& options = {},
                                std::span<const NodeId> fixed_order = {});

struct LouvainResult {
    /// Final communities on the input nodes, canonical.
    Partition partition;
    /// Q after each level that moved at least one node.
    std::vector<double> q_trace;
    /// levels[0] partitions the input nodes, levels[l + 1] partitions the
    /// communities of levels[l].
    std::vector<Partition> levels;
    std::uint64_t seed = 0;
    /// Local-move sweeps per level, including the final level that made no move.
    std::vector<std::size_t> passes;
    /// Node moves made by the optional final refinement. When non-zero,
    /// `partition` refines the projection of `levels` and q_trace carries
    /// one extra entry for it.
    std::size_t refinement_moves = 0;
};

/// Local moves followed by aggregation, repeated until a level makes no move.
/// Deterministic in (g, seed, options). When the very first level cannot
/// improve on singletons, levels holds the singleton partition and q_trace
/// its Q.
LouvainResult louvain(const Graph& g, std::uint64_t seed, const LouvainOptions& options = {});

/// Composes a level hierarchy into a canonical partition of the input nodes.
Partition project_partition(std::span<const Partition> levels);

}  // namespace commlab
