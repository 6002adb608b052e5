#include "commlab/louvain.hpp"

#include <numeric>
#include <optional>
#include <string>

#include "commlab/errors.hpp"
#include "commlab/rng.hpp"

namespace commlab {

LocalMoveStats local_move_phase(const Graph& g, CommunityState& state, std::uint64_t seed,
                                std::uint32_t level, const LouvainOptions& options,
                                std::span<const NodeId> fixed_order) {
    if (!(g.total_weight() > 0.0)) {
        throw UndefinedModularityError("local moves need a graph with M > 0");
    }
    if (&state.graph() != &g) throw ValidationError("community state belongs to a different graph");
    const std::size_t n = g.node_count();
    if (!fixed_order.empty() && fixed_order.size() != n) {
        throw ValidationError("fixed node order must list every node once");
    }
    const double m = g.total_weight();
    const auto degrees = g.degrees();

    std::vector<NodeId> order(n);
    std::vector<double> weight_to(n, 0.0);
    std::vector<char> seen(n, 0);
    std::vector<CommunityId> touched;

    LocalMoveStats stats;
    for (;;) {
        if (fixed_order.empty()) {
            std::iota(order.begin(), order.end(), NodeId{0});
            Rng rng(derive_seed(seed, level, stats.sweeps));
            rng.shuffle(std::span<NodeId>(order));
        } else {
            order.assign(fixed_order.begin(), fixed_order.end());
        }
        ++stats.sweeps;

        std::size_t moves = 0;
        for (const NodeId i : order) {
            const double d = degrees[i];
            if (d <= 0.0) continue;
            const CommunityId from = state.community_of(i);

            for (const Neighbor& nb : g.neighbors(i)) {
                if (nb.node == i) continue;
                const CommunityId c = state.community_of(nb.node);
                if (!seen[c]) {
                    seen[c] = 1;
                    touched.push_back(c);
                }
                weight_to[c] += nb.weight;
            }

            const double w_from = weight_to[from];
            const double total_from = state.total(from);
            CommunityId best = from;
            double best_gain = kMinGain;
            for (const CommunityId c : touched) {
                if (c == from) continue;
                const double gain = move_gain(weight_to[c], w_from, d, state.total(c), total_from, m);
                if (gain <= kMinGain) continue;
                if (options.rule == MoveRule::first_improvement) {
                    best = c;
                    break;
                }
                if (gain > best_gain || (best != from && gain == best_gain && c < best)) {
                    best = c;
                    best_gain = gain;
                }
            }
            if (best != from) {
                state.move_unchecked(i, best, w_from, weight_to[best]);
                ++moves;
            }
            for (const CommunityId c : touched) {
                seen[c] = 0;
                weight_to[c] = 0.0;
            }
            touched.clear();
        }
        stats.moves += moves;
        if (moves == 0) break;
    }
    stats.improved = stats.moves > 0;
    return stats;
}

LouvainResult louvain(const Graph& g, std::uint64_t seed, const LouvainOptions& options) {
    if (!(g.total_weight() > 0.0)) {
        throw UndefinedModularityError("modularity is undefined for a graph with no edges (M = 0)");
    }
    LouvainResult result;
    result.seed = seed;

    const Graph* current = &g;
    std::optional<Graph> owned;
    for (std::uint32_t level = 0;; ++level) {
        CommunityState state = CommunityState::singletons(*current);
        const LocalMoveStats stats = local_move_phase(*current, state, seed, level, options);
        result.passes.push_back(stats.sweeps);
        if (!stats.improved) break;

        Partition level_partition = state.to_partition();
        result.q_trace.push_back(modularity(*current, level_partition));
        MetaGraph meta = aggregate(*current, level_partition);
        result.levels.push_back(std::move(level_partition));
        owned = std::move(meta.graph);
        current = &*owned;
    }
    if (result.levels.empty()) {
        result.levels.push_back(Partition::singletons(g.node_count()));
        result.q_trace.push_back(modularity(g, result.levels.back()));
    }
    result.partition = project_partition(result.levels);
    if (options.refine_final) {
        CommunityState state(g, result.partition.assignment());
        const auto level = static_cast<std::uint32_t>(result.passes.size());
        const LocalMoveStats stats = local_move_phase(g, state, seed, level, options);
        result.refinement_moves = stats.moves;
        if (stats.improved) {
            result.partition = state.to_partition();
            result.q_trace.push_back(modularity(g, result.partition));
        }
    }
    return result;
}

Partition project_partition(std::span<const Partition> levels) {
    if (levels.empty()) throw ValidationError("project_partition needs at least one level");
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
        if (levels[l + 1].size() != levels[l].community_count()) {
            throw ValidationError("level " + std::to_string(l + 1) + " partitions " +
                                  std::to_string(levels[l + 1].size()) + " nodes but level " +
                                  std::to_string(l) + " has " +
                                  std::to_string(levels[l].community_count()) + " communities");
        }
    }
    std::vector<CommunityId> composed(levels.front().assignment().begin(),
                                      levels.front().assignment().end());
    for (std::size_t l = 1; l < levels.size(); ++l) {
        for (CommunityId& c : composed) c = levels[l][c];
    }
    return Partition::from_assignment(std::span<const CommunityId>(composed));
}

}  // namespace commlab
