#include "commlab/modularity.hpp"

#include <string>

#include "commlab/errors.hpp"
#include "commlab/simd/kernels.hpp"

namespace commlab {

namespace {

void require_weight(const Graph& g) {
    if (!(g.total_weight() > 0.0)) {
        throw UndefinedModularityError("modularity is undefined for a graph with no edges (M = 0)");
    }
}

}  // namespace

double modularity(const Graph& g, const Partition& p) {
    require_weight(g);
    if (p.size() != g.node_count()) {
        throw ValidationError("partition has " + std::to_string(p.size()) + " entries, graph has " +
                              std::to_string(g.node_count()) + " nodes");
    }
    const std::size_t k = p.community_count();
    std::vector<double> internal(k, 0.0);
    std::vector<double> total(k, 0.0);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        const CommunityId ci = p[i];
        total[ci] += g.degrees()[i];
        for (const Neighbor& nb : g.neighbors(i)) {
            if (p[nb.node] == ci) internal[ci] += nb.node == i ? 2.0 * nb.weight : nb.weight;
        }
    }
    return simd::kernels().modularity_terms(internal, total, 1.0 / (2.0 * g.total_weight()));
}

CommunityState::CommunityState(const Graph& g, std::span<const CommunityId> assignment)
    : graph_(&g), assignment_(assignment.begin(), assignment.end()) {
    const std::size_t n = g.node_count();
    if (assignment_.size() != n) {
        throw ValidationError("assignment has " + std::to_string(assignment_.size()) +
                              " entries, graph has " + std::to_string(n) + " nodes");
    }
    total_.assign(n, 0.0);
    internal_.assign(n, 0.0);
    for (NodeId i = 0; i < n; ++i) {
        const CommunityId ci = assignment_[i];
        if (ci >= n) throw ValidationError("community id " + std::to_string(ci) + " out of range");
        total_[ci] += g.degrees()[i];
    }
    for (NodeId i = 0; i < n; ++i) {
        const CommunityId ci = assignment_[i];
        for (const Neighbor& nb : g.neighbors(i)) {
            if (assignment_[nb.node] == ci) internal_[ci] += nb.node == i ? 2.0 * nb.weight : nb.weight;
        }
    }
}

CommunityState CommunityState::singletons(const Graph& g) {
    std::vector<CommunityId> ids(g.node_count());
    for (NodeId i = 0; i < ids.size(); ++i) ids[i] = i;
    return CommunityState(g, ids);
}

double CommunityState::modularity() const {
    require_weight(*graph_);
    return simd::kernels().modularity_terms(internal_, total_, 1.0 / (2.0 * graph_->total_weight()));
}

double CommunityState::weight_to(NodeId i, CommunityId c) const {
    double w = 0.0;
    for (const Neighbor& nb : graph_->neighbors(i)) {
        if (nb.node != i && assignment_[nb.node] == c) w += nb.weight;
    }
    return w;
}

bool CommunityState::is_candidate(NodeId i, CommunityId c) const {
    if (assignment_[i] == c) return true;
    for (const Neighbor& nb : graph_->neighbors(i)) {
        if (nb.node != i && assignment_[nb.node] == c) return true;
    }
    return false;
}

namespace {

void check_move(const CommunityState& s, NodeId i, CommunityId target) {
    if (i >= s.size()) throw IndexError("node " + std::to_string(i) + " out of range");
    if (target >= s.size() || !s.is_candidate(i, target)) {
        throw ValidationError("community " + std::to_string(target) +
                              " is neither the current community of node " + std::to_string(i) +
                              " nor adjacent to it");
    }
}

}  // namespace

void CommunityState::apply_move(NodeId i, CommunityId target) {
    check_move(*this, i, target);
    const CommunityId from = assignment_[i];
    if (from == target) return;
    move_unchecked(i, target, weight_to(i, from), weight_to(i, target));
}

void CommunityState::move_unchecked(NodeId i, CommunityId target, double weight_from,
                                    double weight_target) {
    const CommunityId from = assignment_[i];
    if (from == target) return;
    const double d = graph_->degrees()[i];
    const double loop = 2.0 * graph_->self_loop(i);
    total_[from] -= d;
    internal_[from] -= 2.0 * weight_from + loop;
    total_[target] += d;
    internal_[target] += 2.0 * weight_target + loop;
    assignment_[i] = target;
}

double modularity_gain(const Graph& g, const CommunityState& s, NodeId i, CommunityId target) {
    if (&g != &s.graph()) throw ValidationError("community state belongs to a different graph");
    require_weight(g);
    check_move(s, i, target);
    const CommunityId from = s.community_of(i);
    if (from == target) return 0.0;
    const double d = g.degrees()[i];
    return move_gain(s.weight_to(i, target), s.weight_to(i, from), d, s.total(target),
                     s.total(from), g.total_weight());
}

void apply_move(CommunityState& s, NodeId i, CommunityId target) { s.apply_move(i, target); }

}  // namespace commlab
