#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace commlab {

/// Dense node index in [0, N).
using NodeId = std::uint32_t;
/// Community index; canonical partitions use [0, K).
using CommunityId = std::uint32_t;

class Partition;

struct Neighbor {
    NodeId node;
    double weight;
};

/// Bijection between dense indices and the labels found in the input.
///
/// Dense order follows label order: numerically when every label is a
/// decimal integer, lexicographically otherwise. Sorting a partition by
/// dense id therefore sorts it by label too.
class LabelTable {
  public:
    LabelTable() = default;
    explicit LabelTable(std::vector<std::string> labels);

    /// Labels "0".."n-1".
    static LabelTable sequential(std::size_t n);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& operator[](NodeId i) const { return labels_[i]; }
    std::optional<NodeId> find(std::string_view label) const;
    std::span<const std::string> labels() const noexcept { return labels_; }

  private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
};

/// Orders labels the way LabelTable expects dense ids to be assigned.
bool label_less(std::string_view a, std::string_view b, bool numeric);
bool all_numeric(std::span<const std::string> labels);

/// Immutable undirected weighted graph in compressed adjacency form.
///
/// Each undirected edge {i, j} with i != j appears in both rows; a self-loop
/// of weight w appears once in row i and contributes 2w to the degree of i
/// (equivalently A_ii = 2w). With that convention the handshake identity
/// sum_i d_i = 2M holds for every graph, including aggregated ones.
class Graph {
  public:
    Graph() = default;

    std::size_t node_count() const noexcept { return degrees_.size(); }
    /// Number of distinct edges, self-loops included.
    std::size_t edge_count() const noexcept { return edge_count_; }
    /// M: total edge weight (edge count for unweighted input).
    double total_weight() const noexcept { return total_weight_; }

    std::span<const Neighbor> neighbors(NodeId i) const noexcept {
        return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
    }
    double degree(NodeId i) const;  // throws IndexError
    std::span<const double> degrees() const noexcept { return degrees_; }
    double self_loop(NodeId i) const noexcept { return self_loops_[i]; }
    bool has_edge(NodeId i, NodeId j) const;

    const LabelTable& labels() const noexcept { return labels_; }
    const std::string& label(NodeId i) const { return labels_[i]; }

    /// Calls f(u, v, w) once per edge with u <= v, in (u, v) order.
    template <typename F>
    void for_each_edge(F&& f) const {
        for (NodeId u = 0; u < node_count(); ++u) {
            for (const Neighbor& nb : neighbors(u)) {
                if (nb.node >= u) f(u, nb.node, nb.weight);
            }
        }
    }

  private:
    friend class GraphBuilder;

    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbor> adjacency_;
    std::vector<double> degrees_;
    std::vector<double> self_loops_;
    double total_weight_ = 0.0;
    std::size_t edge_count_ = 0;
    LabelTable labels_;
};

/// Collects weighted edges over a fixed node set and freezes them into a Graph.
/// Repeated (u, v) pairs, in either orientation, are merged by summing weights.
class GraphBuilder {
  public:
    explicit GraphBuilder(std::size_t node_count);

    void add_edge(NodeId u, NodeId v, double weight = 1.0);
    void set_labels(LabelTable labels);

    /// Consumes the pending edges.
    Graph build();
    /// Number of merged duplicates seen by the last build().
    std::size_t duplicate_count() const noexcept { return duplicates_; }

  private:
    struct PendingEdge {
        NodeId u, v;
        double weight;
    };
    std::size_t node_count_;
    std::vector<PendingEdge> pending_;
    std::optional<LabelTable> labels_;
    std::size_t duplicates_ = 0;
};

struct ParsedGraph {
    Graph graph;
    /// Input lines that repeated an edge already seen.
    std::size_t duplicate_edges = 0;
};

/// Parses `u v [w]` lines; '#' starts a comment line, blank lines are skipped.
ParsedGraph parse_edge_list(std::istream& in);
ParsedGraph parse_edge_list(std::string_view text);
ParsedGraph load_edge_list(const std::string& path);

/// Writes one `u v w` line per edge using original labels; parse_edge_list
/// reads it back to an identical graph (isolated nodes excepted).
void write_edge_list(std::ostream& out, const Graph& g);

/// Graph of communities produced by one aggregation step.
struct MetaGraph {
    Graph graph;
    /// members[c]: source nodes folded into meta-node c, ascending.
    std::vector<std::vector<NodeId>> members;
};

/// Folds each community into one node: intra-community weight becomes a
/// self-loop, inter-community weight becomes one meta-edge per pair.
MetaGraph aggregate(const Graph& g, const Partition& p);

/// c copies of K_k in a ring; clique t's last node links to clique t+1's first.
Graph ring_of_cliques(std::size_t cliques, std::size_t clique_size);

/// G(n, p) with every unordered pair drawn in (i, j) order from Rng(seed).
Graph random_graph(std::size_t n, double edge_probability, std::uint64_t seed);

}  // namespace commlab
