#include "commlab/echo_loop.hpp"

#include <ostream>
#include <string>
#include <unordered_set>

#include "commlab/errors.hpp"
#include "commlab/format.hpp"
#include "commlab/modularity.hpp"

namespace commlab {

std::vector<CandidateEdge> recommend_links(const Graph& g, const Partition& p, std::size_t per_node,
                                           Rng& rng) {
    if (p.size() != g.node_count()) throw ValidationError("partition size does not match graph");
    const auto members = p.members();
    std::vector<CandidateEdge> out;
    std::unordered_set<std::uint64_t> proposed;
    std::vector<char> adjacent(g.node_count(), 0);
    std::vector<NodeId> eligible;

    for (NodeId i = 0; i < g.node_count(); ++i) {
        for (const Neighbor& nb : g.neighbors(i)) adjacent[nb.node] = 1;
        eligible.clear();
        for (const NodeId j : members[p[i]]) {
            if (j != i && !adjacent[j]) eligible.push_back(j);
        }
        for (const Neighbor& nb : g.neighbors(i)) adjacent[nb.node] = 0;

        const std::size_t take = std::min(per_node, eligible.size());
        for (std::size_t t = 0; t < take; ++t) {
            const auto pick = t + static_cast<std::size_t>(rng.below(eligible.size() - t));
            std::swap(eligible[t], eligible[pick]);
            const NodeId u = std::min(i, eligible[t]);
            const NodeId v = std::max(i, eligible[t]);
            if (proposed.insert((std::uint64_t{u} << 32) | v).second) out.push_back({u, v});
        }
    }
    return out;
}

double mixing_ratio(const Graph& g, const Partition& p) {
    if (p.size() != g.node_count()) throw ValidationError("partition size does not match graph");
    if (!(g.total_weight() > 0.0)) return 0.0;
    double inter = 0.0;
    g.for_each_edge([&](NodeId u, NodeId v, double w) {
        if (p[u] != p[v]) inter += w;
    });
    return inter / g.total_weight();
}

Graph add_edges(const Graph& g, std::span<const CandidateEdge> edges) {
    GraphBuilder builder(g.node_count());
    g.for_each_edge([&](NodeId u, NodeId v, double w) { builder.add_edge(u, v, w); });
    for (const CandidateEdge& e : edges) builder.add_edge(e.u, e.v, 1.0);
    builder.set_labels(g.labels());
    return builder.build();
}

std::string_view policy_name(DetectionSeedPolicy policy) noexcept {
    return policy == DetectionSeedPolicy::fixed ? "fixed" : "per-round";
}

DetectionSeedPolicy parse_policy(std::string_view name) {
    if (name == "fixed") return DetectionSeedPolicy::fixed;
    if (name == "per-round") return DetectionSeedPolicy::per_round;
    throw ValidationError("unknown detection seed policy '" + std::string(name) + "'");
}

LoopTrajectory simulate_loop(const Graph& g, const LoopConfig& config) {
    if (!(g.total_weight() > 0.0)) {
        throw UndefinedModularityError("the echo loop needs a graph with M > 0");
    }
    if (!(config.acceptance_probability >= 0.0 && config.acceptance_probability <= 1.0)) {
        throw ValidationError("acceptance probability must lie in [0, 1]");
    }
    const auto detection_seed = [&](std::size_t round) {
        return config.detection == DetectionSeedPolicy::fixed ? config.seed : derive_seed(config.seed, round);
    };
    // Recommendation and acceptance share one stream, separate from detection.
    Rng rng(derive_seed(config.seed, 0x6563686f));

    LoopTrajectory trajectory;
    Graph current = g;
    Partition partition = louvain(current, detection_seed(0)).partition;
    const auto record = [&](std::size_t round, std::size_t added) {
        trajectory.records.push_back({round, modularity(current, partition), partition.community_count(), added,
                                      mixing_ratio(current, partition)});
    };
    record(0, 0);

    for (std::size_t round = 1; round <= config.rounds; ++round) {
        const auto candidates = recommend_links(current, partition, config.recommendations_per_node, rng);
        std::vector<CandidateEdge> accepted;
        for (const CandidateEdge& e : candidates) {
            if (rng.bernoulli(config.acceptance_probability)) accepted.push_back(e);
        }
        if (!accepted.empty()) current = add_edges(current, accepted);
        if (config.keep_history) trajectory.history.push_back({partition, accepted});
        partition = louvain(current, detection_seed(round)).partition;
        record(round, accepted.size());
    }
    trajectory.final_partition = std::move(partition);
    trajectory.final_graph = std::move(current);
    return trajectory;
}

void write_trajectory_csv(std::ostream& out, const LoopTrajectory& trajectory) {
    out << "round,q,communities,edges_added,mixing_ratio\n";
    for (const LoopRecord& r : trajectory.records) {
        out << r.round << ',' << format_shortest(r.q) << ',' << r.communities << ',' << r.edges_added << ','
            << format_shortest(r.mixing_ratio) << '\n';
    }
}

}  // namespace commlab
