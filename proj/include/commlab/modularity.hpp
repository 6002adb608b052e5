#pragma once

#include <span>
#include <vector>

#include "commlab/graph.hpp"
#include "commlab/partition.hpp"

namespace commlab {

/// Gains at or below this threshold count as "no increase".
inline constexpr double kMinGain = 1e-12;

/// Q = sum_c [ in(c) / 2M - (tot(c) / 2M)^2 ], evaluated from community
/// totals in O(N + E). in(c) sums A_ij over ordered member pairs (so each
/// internal edge counts twice and a self-loop counts 2w); tot(c) sums degrees.
///
/// Throws UndefinedModularityError when M == 0 and ValidationError when the
/// partition does not cover the graph.
double modularity(const Graph& g, const Partition& p);

/// Mutable community bookkeeping for local moves.
///
/// Ids live in [0, N); empty communities are allowed. The referenced graph
/// must outlive the state.
class CommunityState {
  public:
    CommunityState(const Graph& g, std::span<const CommunityId> assignment);
    static CommunityState singletons(const Graph& g);

    const Graph& graph() const noexcept { return *graph_; }
    std::size_t size() const noexcept { return assignment_.size(); }
    CommunityId community_of(NodeId i) const { return assignment_[i]; }
    std::span<const CommunityId> assignment() const noexcept { return assignment_; }
    /// Sum of degrees of members.
    double total(CommunityId c) const { return total_[c]; }
    /// Sum of A_ij over ordered member pairs.
    double internal(CommunityId c) const { return internal_[c]; }
    std::span<const double> totals() const noexcept { return total_; }
    std::span<const double> internals() const noexcept { return internal_; }

    /// Q of the current assignment.
    double modularity() const;

    /// Weight from i to the members of c, excluding i's own self-loop.
    double weight_to(NodeId i, CommunityId c) const;

    /// Whether i may move to c: c is i's community or holds a neighbor of i.
    bool is_candidate(NodeId i, CommunityId c) const;

    /// Moves i to `target` in O(deg(i)). Throws ValidationError for
    /// non-candidate targets.
    void apply_move(NodeId i, CommunityId target);

    /// Same update without the candidate check, for callers that already
    /// know both incident weights.
    void move_unchecked(NodeId i, CommunityId target, double weight_from, double weight_to);

    Partition to_partition() const { return Partition::from_assignment(assignment_); }

  private:
    const Graph* graph_;
    std::vector<CommunityId> assignment_;
    std::vector<double> total_;
    std::vector<double> internal_;
};

/// Change in Q when node i (degree `degree`) leaves community `from` for
/// `to`. `weight_from` excludes i's self-loop; totals include i's degree in
/// `from` and exclude it in `to`. Shared by modularity_gain and the Louvain
/// sweep so both evaluate the identical expression.
inline double move_gain(double weight_to, double weight_from, double degree, double total_to,
                        double total_from, double m) {
    return (weight_to - weight_from) / m - degree * (total_to - total_from + degree) / (2.0 * m * m);
}

/// Q(after moving i to target) - Q(before), from the totals alone. Pure.
/// Returns exactly 0 for target == current community.
double modularity_gain(const Graph& g, const CommunityState& s, NodeId i, CommunityId target);

/// Free-function spelling of CommunityState::apply_move.
void apply_move(CommunityState& s, NodeId i, CommunityId target);

}  // namespace commlab
