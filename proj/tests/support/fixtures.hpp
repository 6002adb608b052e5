#pragma once

#include <string>

#include "commlab/graph.hpp"
#include "commlab/partition.hpp"
#include "commlab/rng.hpp"

namespace commlab::testing {

inline Graph parse(const std::string& text) { return parse_edge_list(text).graph; }

inline Graph triangle() { return parse("0 1\n1 2\n2 0\n"); }

/// Triangles 1-2-3 and 4-5-6 joined by the bridge 3-4.
inline Graph barbell() { return parse("1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n3 4\n"); }

inline Graph single_edge() { return parse("0 1\n"); }

inline Graph path3() { return parse("1 2\n2 3\n"); }

inline Graph star3() { return parse("0 1\n0 2\n0 3\n"); }

inline Partition from_ids(std::initializer_list<CommunityId> ids) {
    const std::vector<CommunityId> v(ids);
    return Partition::from_assignment(std::span<const CommunityId>(v));
}

/// `groups` sparse communities (a ring plus random chords each), chained by
/// one bridge per group. Louvain recovers the groups reliably.
inline Graph planted_rings(std::size_t groups, std::size_t size, double chord_probability, std::uint64_t seed) {
    Rng rng(seed);
    GraphBuilder b(groups * size);
    for (std::size_t g = 0; g < groups; ++g) {
        const auto base = static_cast<NodeId>(g * size);
        for (NodeId i = 0; i < size; ++i) b.add_edge(base + i, base + static_cast<NodeId>((i + 1) % size));
        for (NodeId i = 0; i < size; ++i) {
            for (NodeId j = i + 2; j < size; ++j) {
                if (rng.bernoulli(chord_probability)) b.add_edge(base + i, base + j);
            }
        }
        b.add_edge(base, static_cast<NodeId>(((g + 1) % groups) * size + size / 2));
    }
    return b.build();
}

inline Partition barbell_split() { return from_ids({0, 0, 0, 1, 1, 1}); }

}  // namespace commlab::testing
