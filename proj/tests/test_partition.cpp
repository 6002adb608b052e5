#include <gtest/gtest.h>

#include <sstream>

#include "commlab/errors.hpp"
#include "commlab/partition.hpp"
#include "fixtures.hpp"

using namespace commlab;
using namespace commlab::testing;

TEST(Partition, CanonicalOrderBySizeThenSmallestMember) {
    const Partition p = from_ids({7, 3, 3, 9, 9, 9, 7});
    // {3,4,5} is largest; {0,6} and {1,2} tie on size, {0,6} holds node 0.
    EXPECT_EQ(std::vector<CommunityId>(p.assignment().begin(), p.assignment().end()),
              (std::vector<CommunityId>{1, 2, 2, 0, 0, 0, 1}));
    EXPECT_EQ(p.community_count(), 3u);
    EXPECT_EQ(p.community_sizes(), (std::vector<std::size_t>{3, 2, 2}));
}

TEST(Partition, RelabelingGivesEqualPartitions) {
    EXPECT_EQ(from_ids({0, 0, 1, 2}), from_ids({5, 5, 1, 0}));
    EXPECT_NE(from_ids({0, 0, 1, 2}), from_ids({0, 1, 1, 2}));
}

TEST(Partition, TsvRoundTripUsesOriginalLabels) {
    const Graph g = barbell();
    std::ostringstream out;
    write_partition_tsv(out, g, barbell_split());
    EXPECT_EQ(out.str(), "1\t0\n2\t0\n3\t0\n4\t1\n5\t1\n6\t1\n");
    std::istringstream in(out.str());
    EXPECT_EQ(read_partition_tsv(in, g), barbell_split());
}

TEST(Partition, TsvRejectsMismatchedNodeSets) {
    const Graph g = triangle();
    std::istringstream missing("0\t0\n1\t0\n");
    EXPECT_THROW(read_partition_tsv(missing, g), ValidationError);
    std::istringstream unknown("0\t0\n1\t0\n2\t0\n3\t1\n");
    EXPECT_THROW(read_partition_tsv(unknown, g), ValidationError);
    std::istringstream twice("0\t0\n1\t0\n2\t0\n2\t1\n");
    EXPECT_THROW(read_partition_tsv(twice, g), ValidationError);
    std::istringstream garbage("0\tx\n");
    EXPECT_THROW(read_partition_tsv(garbage, g), ParseError);
}
