#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "commlab/diagnostics.hpp"
#include "commlab/errors.hpp"

namespace commlab {

std::string_view metric_name(SimilarityMetric m) noexcept {
    switch (m) {
        case SimilarityMetric::nmi: return "nmi";
        case SimilarityMetric::ari: return "ari";
        case SimilarityMetric::vi: return "vi";
    }
    return "nmi";
}

SimilarityMetric parse_metric(std::string_view name) {
    if (name == "nmi") return SimilarityMetric::nmi;
    if (name == "ari") return SimilarityMetric::ari;
    if (name == "vi") return SimilarityMetric::vi;
    throw ValidationError("unknown similarity metric '" + std::string(name) + "'");
}

double self_similarity(SimilarityMetric m) noexcept { return m == SimilarityMetric::vi ? 0.0 : 1.0; }

namespace {

struct Contingency {
    double n = 0.0;
    std::vector<double> rows;
    std::vector<double> cols;
    std::vector<double> cells;  // non-zero n_ij only
};

Contingency contingency(const Partition& a, const Partition& b) {
    Contingency t;
    t.n = static_cast<double>(a.size());
    t.rows.assign(a.community_count(), 0.0);
    t.cols.assign(b.community_count(), 0.0);
    std::unordered_map<std::uint64_t, std::size_t> cell_index;
    std::vector<std::uint64_t> keys;
    for (NodeId i = 0; i < a.size(); ++i) {
        t.rows[a[i]] += 1.0;
        t.cols[b[i]] += 1.0;
        const std::uint64_t key = std::uint64_t{a[i]} * b.community_count() + b[i];
        auto [it, inserted] = cell_index.try_emplace(key, keys.size());
        if (inserted) keys.push_back(key);
    }
    // Sum cells in key order so the result does not depend on hash layout.
    std::vector<double> by_slot(keys.size(), 0.0);
    for (NodeId i = 0; i < a.size(); ++i) {
        by_slot[cell_index[std::uint64_t{a[i]} * b.community_count() + b[i]]] += 1.0;
    }
    std::vector<std::size_t> order(keys.size());
    for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });
    t.cells.reserve(keys.size());
    for (std::size_t s : order) t.cells.push_back(by_slot[s]);
    return t;
}

struct Information {
    double h_a = 0.0, h_b = 0.0, mutual = 0.0;
};

double entropy(const std::vector<double>& counts, double n) {
    double h = 0.0;
    for (double c : counts) {
        if (c > 0.0) h -= (c / n) * std::log(c / n);
    }
    return h;
}

Information information(const Partition& a, const Partition& b) {
    const Contingency t = contingency(a, b);
    Information info;
    info.h_a = entropy(t.rows, t.n);
    info.h_b = entropy(t.cols, t.n);
    // I = H(U) + H(V) - H(U,V); the joint entropy comes from the cell counts.
    const double joint = entropy(t.cells, t.n);
    info.mutual = std::max(0.0, info.h_a + info.h_b - joint);
    return info;
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

double adjusted_rand(const Partition& a, const Partition& b) {
    const Contingency t = contingency(a, b);
    double index = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (double c : t.cells) index += choose2(c);
    for (double r : t.rows) sum_a += choose2(r);
    for (double c : t.cols) sum_b += choose2(c);
    const double pairs = choose2(t.n);
    if (pairs == 0.0) return 1.0;
    const double expected = sum_a * sum_b / pairs;
    const double maximum = (sum_a + sum_b) / 2.0;
    if (maximum == expected) return 1.0;
    return (index - expected) / (maximum - expected);
}

}  // namespace

double partition_similarity(const Partition& a, const Partition& b, SimilarityMetric metric) {
    if (a.size() != b.size()) {
        throw ValidationError("cannot compare partitions of " + std::to_string(a.size()) + " and " +
                              std::to_string(b.size()) + " nodes");
    }
    if (a == b) return self_similarity(metric);
    switch (metric) {
        case SimilarityMetric::nmi: {
            const Information info = information(a, b);
            const double denom = info.h_a + info.h_b;
            if (denom == 0.0) return 1.0;
            return std::clamp(2.0 * info.mutual / denom, 0.0, 1.0);
        }
        case SimilarityMetric::ari: return adjusted_rand(a, b);
        case SimilarityMetric::vi: {
            const Information info = information(a, b);
            return std::max(0.0, info.h_a + info.h_b - 2.0 * info.mutual);
        }
    }
    return 0.0;
}

}  // namespace commlab
