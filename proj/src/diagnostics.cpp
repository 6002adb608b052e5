#include "commlab/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "commlab/errors.hpp"
#include "commlab/modularity.hpp"
#include "commlab/rng.hpp"
#include "commlab/simd/kernels.hpp"

namespace commlab {

CoClassification co_classification(std::span<const Partition> partitions, std::size_t cap,
                                   std::uint64_t sample_seed) {
    if (partitions.empty()) throw ValidationError("co-classification needs at least one partition");
    const std::size_t n = partitions.front().size();
    for (const Partition& p : partitions) {
        if (p.size() != n) throw ValidationError("partitions differ in node count");
    }
    CoClassification out;
    out.runs = partitions.size();
    if (n <= cap) {
        out.nodes.resize(n);
        std::iota(out.nodes.begin(), out.nodes.end(), NodeId{0});
    } else {
        std::vector<NodeId> all(n);
        std::iota(all.begin(), all.end(), NodeId{0});
        Rng rng(sample_seed);
        rng.shuffle(std::span<NodeId>(all));
        out.nodes.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cap));
        std::sort(out.nodes.begin(), out.nodes.end());
        out.sampled = true;
    }
    const std::size_t dim = out.nodes.size();
    out.counts.assign(dim * dim, 0);
    const auto& kernels = simd::kernels();
    std::vector<std::uint32_t> labels(dim);
    for (const Partition& p : partitions) {
        for (std::size_t a = 0; a < dim; ++a) labels[a] = p[out.nodes[a]];
        for (std::size_t a = 0; a < dim; ++a) {
            kernels.count_equal(labels, labels[a], std::span<std::uint32_t>(out.counts.data() + a * dim, dim));
        }
    }
    return out;
}

DiagnosticsReport run_ensemble(const Graph& g, std::span<const std::uint64_t> seeds,
                               const EnsembleOptions& options) {
    if (seeds.size() < 2) throw ValidationError("an ensemble needs at least two seeds");
    if (!(g.total_weight() > 0.0)) {
        throw UndefinedModularityError("modularity is undefined for a graph with no edges (M = 0)");
    }
    DiagnosticsReport report;
    report.metric = options.metric;
    report.runs.resize(seeds.size());

    std::size_t threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, seeds.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t r = next++; r < seeds.size(); r = next++) {
            try {
                LouvainResult result = louvain(g, seeds[r], options.louvain);
                EnsembleRun& run = report.runs[r];
                run.seed = seeds[r];
                run.q = modularity(g, result.partition);
                run.communities = result.partition.community_count();
                run.sizes = result.partition.community_sizes();
                run.partition = std::move(result.partition);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    const std::size_t r = report.runs.size();
    report.pairwise.assign(r * r, self_similarity(options.metric));
    for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = a + 1; b < r; ++b) {
            const double s = partition_similarity(report.runs[a].partition, report.runs[b].partition,
                                                  options.metric);
            report.pairwise[a * r + b] = s;
            report.pairwise[b * r + a] = s;
        }
    }

    std::vector<Partition> partitions;
    partitions.reserve(r);
    for (const EnsembleRun& run : report.runs) partitions.push_back(run.partition);
    report.coclassification = co_classification(partitions, options.coclassification_cap, options.sample_seed);

    EnsembleSummary& s = report.summary;
    s.q_min = std::numeric_limits<double>::infinity();
    s.q_max = -std::numeric_limits<double>::infinity();
    double q_sum = 0.0;
    for (const EnsembleRun& run : report.runs) {
        q_sum += run.q;
        s.q_min = std::min(s.q_min, run.q);
        s.q_max = std::max(s.q_max, run.q);
    }
    s.q_mean = q_sum / static_cast<double>(r);
    s.similarity_min = std::numeric_limits<double>::infinity();
    s.similarity_max = -std::numeric_limits<double>::infinity();
    double sim_sum = 0.0;
    for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = a + 1; b < r; ++b) {
            const double v = report.pairwise[a * r + b];
            sim_sum += v;
            s.similarity_min = std::min(s.similarity_min, v);
            s.similarity_max = std::max(s.similarity_max, v);
        }
    }
    s.similarity_mean = sim_sum / static_cast<double>(r * (r - 1) / 2);
    return report;
}

namespace {

/// Depth-first walk over restricted growth strings with incremental block
/// totals, so each leaf costs O(blocks) instead of a full re-evaluation.
class PartitionSearch {
  public:
    explicit PartitionSearch(const Graph& g)
        : n_(g.node_count()), two_m_(2.0 * g.total_weight()), adjacency_(n_ * n_, 0.0),
          degrees_(g.degrees().begin(), g.degrees().end()), blocks_(n_, 0),
          internal_(n_, 0.0), total_(n_, 0.0) {
        for (NodeId i = 0; i < n_; ++i) {
            for (const Neighbor& nb : g.neighbors(i)) {
                adjacency_[i * n_ + nb.node] = nb.node == i ? 2.0 * nb.weight : nb.weight;
            }
        }
    }

    OracleResult run() {
        descend(0, 0);
        OracleResult result;
        result.partition = Partition::from_assignment(std::span<const CommunityId>(best_));
        result.q = best_q_;
        result.partitions_evaluated = evaluated_;
        return result;
    }

  private:
    void descend(std::size_t i, std::size_t used) {
        if (i == n_) {
            leaf(used);
            return;
        }
        for (CommunityId b = 0; b <= used && b < n_; ++b) {
            double gained = adjacency_[i * n_ + i];
            for (std::size_t j = 0; j < i; ++j) {
                if (blocks_[j] == b) gained += 2.0 * adjacency_[i * n_ + j];
            }
            blocks_[i] = b;
            internal_[b] += gained;
            total_[b] += degrees_[i];
            descend(i + 1, b == used ? used + 1 : used);
            internal_[b] -= gained;
            total_[b] -= degrees_[i];
        }
    }

    void leaf(std::size_t used) {
        ++evaluated_;
        double q = 0.0;
        for (std::size_t b = 0; b < used; ++b) {
            const double share = total_[b] / two_m_;
            q += internal_[b] / two_m_ - share * share;
        }
        if (best_.empty() || q > best_q_ + kMinGain) {
            adopt(q);
        } else if (q >= best_q_ - kMinGain) {
            const Partition candidate = Partition::from_assignment(std::span<const CommunityId>(blocks_));
            const auto current = Partition::from_assignment(std::span<const CommunityId>(best_));
            if (std::lexicographical_compare(candidate.assignment().begin(), candidate.assignment().end(),
                                             current.assignment().begin(), current.assignment().end())) {
                adopt(std::max(q, best_q_));
            }
        }
    }

    void adopt(double q) {
        best_q_ = q;
        best_.assign(blocks_.begin(), blocks_.end());
    }

    std::size_t n_;
    double two_m_;
    std::vector<double> adjacency_;
    std::vector<double> degrees_;
    std::vector<CommunityId> blocks_;
    std::vector<double> internal_;
    std::vector<double> total_;
    std::vector<CommunityId> best_;
    double best_q_ = 0.0;
    std::uint64_t evaluated_ = 0;
};

}  // namespace

OracleResult brute_force_best_partition(const Graph& g) {
    if (g.node_count() > kOracleMaxNodes) {
        throw SizeLimitError("exhaustive search is limited to " + std::to_string(kOracleMaxNodes) +
                             " nodes, graph has " + std::to_string(g.node_count()));
    }
    if (!(g.total_weight() > 0.0)) {
        throw UndefinedModularityError("modularity is undefined for a graph with no edges (M = 0)");
    }
    OracleResult result = PartitionSearch(g).run();
    // Report Q through the engine so oracle and Louvain values share one route.
    result.q = modularity(g, result.partition);
    return result;
}

Partition clique_partition(std::size_t cliques, std::size_t clique_size) {
    std::vector<CommunityId> ids(cliques * clique_size);
    for (std::size_t v = 0; v < ids.size(); ++v) ids[v] = static_cast<CommunityId>(v / clique_size);
    return Partition::from_assignment(std::span<const CommunityId>(ids));
}

Partition merged_pairs_partition(std::size_t cliques, std::size_t clique_size) {
    std::vector<CommunityId> ids(cliques * clique_size);
    for (std::size_t v = 0; v < ids.size(); ++v) ids[v] = static_cast<CommunityId>(v / clique_size / 2);
    return Partition::from_assignment(std::span<const CommunityId>(ids));
}

ResolutionProbeReport resolution_probe(std::size_t cliques, std::size_t clique_size, std::uint64_t seed) {
    const Graph g = ring_of_cliques(cliques, clique_size);
    ResolutionProbeReport report;
    report.cliques = cliques;
    report.clique_size = clique_size;
    report.seed = seed;
    report.q_singleton_cliques = modularity(g, clique_partition(cliques, clique_size));
    report.q_merged_pairs = modularity(g, merged_pairs_partition(cliques, clique_size));
    const LouvainResult run = louvain(g, seed);
    report.louvain_community_count = run.partition.community_count();
    report.louvain_q = modularity(g, run.partition);
    report.limit_manifested = report.q_merged_pairs - report.q_singleton_cliques > kMinGain;
    return report;
}

}  // namespace commlab
