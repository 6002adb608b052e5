#include "commlab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "commlab/errors.hpp"
#include "commlab/format.hpp"
#include "commlab/partition.hpp"
#include "commlab/rng.hpp"

namespace commlab {

namespace {

bool is_decimal(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_leading_zeros(std::string_view s) {
    const auto pos = s.find_first_not_of('0');
    return pos == std::string_view::npos ? s.substr(s.size() - 1) : s.substr(pos);
}

}  // namespace

bool all_numeric(std::span<const std::string> labels) {
    return std::all_of(labels.begin(), labels.end(), [](const std::string& s) { return is_decimal(s); });
}

bool label_less(std::string_view a, std::string_view b, bool numeric) {
    if (!numeric) return a < b;
    const auto ta = strip_leading_zeros(a);
    const auto tb = strip_leading_zeros(b);
    if (ta.size() != tb.size()) return ta.size() < tb.size();
    if (ta != tb) return ta < tb;
    return a < b;  // "007" vs "7": same value, distinct labels
}

LabelTable::LabelTable(std::vector<std::string> labels) : labels_(std::move(labels)) {
    index_.reserve(labels_.size());
    for (NodeId i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], i).second) {
            throw ValidationError("duplicate node label '" + labels_[i] + "'");
        }
    }
}

LabelTable LabelTable::sequential(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return LabelTable(std::move(labels));
}

std::optional<NodeId> LabelTable::find(std::string_view label) const {
    const auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double Graph::degree(NodeId i) const {
    if (i >= node_count()) {
        throw IndexError("node " + std::to_string(i) + " out of range [0, " +
                         std::to_string(node_count()) + ")");
    }
    return degrees_[i];
}

bool Graph::has_edge(NodeId i, NodeId j) const {
    const auto row = neighbors(i);
    const auto it = std::lower_bound(row.begin(), row.end(), j,
                                     [](const Neighbor& nb, NodeId v) { return nb.node < v; });
    return it != row.end() && it->node == j;
}

GraphBuilder::GraphBuilder(std::size_t node_count) : node_count_(node_count) {}

void GraphBuilder::add_edge(NodeId u, NodeId v, double weight) {
    if (u >= node_count_ || v >= node_count_) {
        throw IndexError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                         ") references a node outside [0, " + std::to_string(node_count_) + ")");
    }
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
        throw ValidationError("edge weight must be finite and non-negative");
    }
    if (u > v) std::swap(u, v);
    pending_.push_back({u, v, weight});
}

void GraphBuilder::set_labels(LabelTable labels) {
    if (labels.size() != node_count_) {
        throw ValidationError("label table size does not match node count");
    }
    labels_ = std::move(labels);
}

Graph GraphBuilder::build() {
    // Stable so that merged weights are summed in insertion order.
    std::stable_sort(pending_.begin(), pending_.end(), [](const PendingEdge& a, const PendingEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::vector<PendingEdge> edges;
    edges.reserve(pending_.size());
    duplicates_ = 0;
    for (const PendingEdge& e : pending_) {
        if (!edges.empty() && edges.back().u == e.u && edges.back().v == e.v) {
            edges.back().weight += e.weight;
            ++duplicates_;
        } else {
            edges.push_back(e);
        }
    }
    pending_.clear();
    pending_.shrink_to_fit();

    Graph g;
    const std::size_t n = node_count_;
    std::vector<std::size_t> counts(n, 0);
    for (const PendingEdge& e : edges) {
        ++counts[e.u];
        if (e.u != e.v) ++counts[e.v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + counts[i];
    g.adjacency_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    g.self_loops_.assign(n, 0.0);
    // Edges arrive sorted by (u, v) with u <= v, so every row fills in
    // ascending neighbor order: first the smaller endpoints, then the rest.
    for (const PendingEdge& e : edges) {
        g.adjacency_[cursor[e.u]++] = {e.v, e.weight};
        if (e.u != e.v) {
            g.adjacency_[cursor[e.v]++] = {e.u, e.weight};
        } else {
            g.self_loops_[e.u] = e.weight;
        }
        g.total_weight_ += e.weight;
    }
    g.edge_count_ = edges.size();
    g.degrees_.assign(n, 0.0);
    for (NodeId i = 0; i < n; ++i) {
        double d = 0.0;
        for (const Neighbor& nb : g.neighbors(i)) d += nb.node == i ? 2.0 * nb.weight : nb.weight;
        g.degrees_[i] = d;
    }
    g.labels_ = labels_ ? std::move(*labels_) : LabelTable::sequential(n);
    labels_.reset();
    return g;
}

ParsedGraph parse_edge_list(std::istream& in) {
    struct RawEdge {
        std::uint32_t u, v;
        double weight;
    };
    std::unordered_map<std::string, std::uint32_t> first_seen;
    std::vector<std::string> raw_labels;
    std::vector<RawEdge> raw;

    const auto intern = [&](std::string_view token) {
        auto [it, inserted] = first_seen.try_emplace(std::string(token), static_cast<std::uint32_t>(raw_labels.size()));
        if (inserted) raw_labels.emplace_back(token);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string_view> fields;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        fields.clear();
        std::size_t pos = 0;
        while (pos < line.size()) {
            pos = line.find_first_not_of(" \t\v\f", pos);
            if (pos == std::string::npos) break;
            const auto end = std::min(line.find_first_of(" \t\v\f", pos), line.size());
            fields.emplace_back(line.data() + pos, end - pos);
            pos = end;
        }
        if (fields.empty() || fields.front().front() == '#') continue;
        if (fields.size() < 2) throw ParseError(line_no, "expected 'u v [w]', found one field");
        if (fields.size() > 3) throw ParseError(line_no, "expected 'u v [w]', found extra fields");
        double weight = 1.0;
        if (fields.size() == 3) {
            const auto token = fields[2];
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), weight);
            if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(weight)) {
                throw ParseError(line_no, "invalid weight '" + std::string(token) + "'");
            }
            if (weight < 0.0) {
                throw ValidationError("line " + std::to_string(line_no) + ": negative weight " +
                                      std::string(token));
            }
        }
        raw.push_back({intern(fields[0]), intern(fields[1]), weight});
    }
    if (in.bad()) throw IoError("read error while parsing edge list");

    const bool numeric = all_numeric(raw_labels);
    std::vector<std::uint32_t> order(raw_labels.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return label_less(raw_labels[a], raw_labels[b], numeric);
    });
    std::vector<NodeId> dense(raw_labels.size());
    std::vector<std::string> labels(raw_labels.size());
    for (NodeId i = 0; i < order.size(); ++i) {
        dense[order[i]] = i;
        labels[i] = std::move(raw_labels[order[i]]);
    }

    GraphBuilder builder(labels.size());
    for (const RawEdge& e : raw) builder.add_edge(dense[e.u], dense[e.v], e.weight);
    builder.set_labels(LabelTable(std::move(labels)));
    ParsedGraph result;
    result.graph = builder.build();
    result.duplicate_edges = builder.duplicate_count();
    return result;
}

ParsedGraph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in);
}

ParsedGraph load_edge_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open edge list '" + path + "'");
    return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    g.for_each_edge([&](NodeId u, NodeId v, double w) {
        out << g.label(u) << ' ' << g.label(v) << ' ' << format_shortest(w) << '\n';
    });
}

MetaGraph aggregate(const Graph& g, const Partition& p) {
    if (p.size() != g.node_count()) {
        throw ValidationError("partition has " + std::to_string(p.size()) + " entries, graph has " +
                              std::to_string(g.node_count()) + " nodes");
    }
    MetaGraph meta;
    meta.members = p.members();
    GraphBuilder builder(p.community_count());
    g.for_each_edge([&](NodeId u, NodeId v, double w) { builder.add_edge(p[u], p[v], w); });
    meta.graph = builder.build();
    return meta;
}

Graph ring_of_cliques(std::size_t cliques, std::size_t clique_size) {
    if (cliques < 3 || clique_size < 3) {
        throw ValidationError("ring_of_cliques needs at least 3 cliques of at least 3 nodes");
    }
    const std::size_t n = cliques * clique_size;
    GraphBuilder builder(n);
    for (std::size_t t = 0; t < cliques; ++t) {
        const auto base = static_cast<NodeId>(t * clique_size);
        for (NodeId a = 0; a < clique_size; ++a) {
            for (NodeId b = a + 1; b < clique_size; ++b) builder.add_edge(base + a, base + b);
        }
        const auto next = static_cast<NodeId>(((t + 1) % cliques) * clique_size);
        builder.add_edge(base + static_cast<NodeId>(clique_size - 1), next);
    }
    return builder.build();
}

Graph random_graph(std::size_t n, double edge_probability, std::uint64_t seed) {
    if (n < 1) throw ValidationError("random_graph needs n >= 1");
    if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
        throw ValidationError("edge probability must lie in [0, 1]");
    }
    Rng rng(seed);
    GraphBuilder builder(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (rng.bernoulli(edge_probability)) builder.add_edge(i, j);
        }
    }
    return builder.build();
}

}  // namespace commlab
