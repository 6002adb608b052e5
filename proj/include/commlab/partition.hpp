#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "commlab/graph.hpp"

namespace commlab {

/// Assignment of every node to exactly one community, always held in
/// canonical form: ids 0..K-1 numbered by descending community size, ties
/// broken by the smallest member node id.
///
/// Because construction canonicalizes, two assignments that differ only by
/// a renaming of community ids produce equal Partition objects.
class Partition {
  public:
    Partition() = default;

    /// Canonicalizes arbitrary (possibly sparse) ids.
    static Partition from_assignment(std::span<const std::uint64_t> assignment);
    static Partition from_assignment(std::span<const CommunityId> assignment);
    static Partition singletons(std::size_t n);
    static Partition all_in_one(std::size_t n);

    std::size_t size() const noexcept { return assignment_.size(); }
    std::size_t community_count() const noexcept { return community_count_; }
    CommunityId operator[](NodeId i) const { return assignment_[i]; }
    std::span<const CommunityId> assignment() const noexcept { return assignment_; }

    /// Community sizes indexed by id, hence non-increasing.
    std::vector<std::size_t> community_sizes() const;
    /// Members of each community in ascending node order.
    std::vector<std::vector<NodeId>> members() const;

    friend bool operator==(const Partition&, const Partition&) = default;

  private:
    std::vector<CommunityId> assignment_;
    std::size_t community_count_ = 0;
};

/// One `label<TAB>community` line per node, ascending label order.
void write_partition_tsv(std::ostream& out, const Graph& g, const Partition& p);

/// Reads a partition TSV against `g`'s labels. Every node must appear
/// exactly once and no unknown label may appear (ValidationError otherwise).
Partition read_partition_tsv(std::istream& in, const Graph& g);

}  // namespace commlab
