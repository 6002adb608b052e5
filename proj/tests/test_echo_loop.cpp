#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "commlab/echo_loop.hpp"
#include "commlab/errors.hpp"
#include "commlab/modularity.hpp"
#include "fixtures.hpp"

using namespace commlab;
using namespace commlab::testing;

TEST(RecommendLinks, CliquesHaveNoCandidates) {
    Rng rng(1);
    EXPECT_TRUE(recommend_links(triangle(), Partition::all_in_one(3), 1, rng).empty());
    EXPECT_TRUE(recommend_links(barbell(), barbell_split(), 3, rng).empty());
}

TEST(RecommendLinks, PathOnlyPair) {
    const Graph g = path3();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const auto c = recommend_links(g, Partition::all_in_one(3), 1, rng);
        ASSERT_EQ(c.size(), 1u);
        EXPECT_EQ(g.label(c[0].u), "1");
        EXPECT_EQ(g.label(c[0].v), "3");
    }
}

TEST(RecommendLinks, EligibleAndUnique) {
    const Graph g = random_graph(40, 0.1, 3);
    const Partition p = louvain(g, 3).partition;
    Rng rng(8);
    const auto c = recommend_links(g, p, 3, rng);
    EXPECT_LE(c.size(), g.node_count() * 3);
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& e : c) {
        EXPECT_LT(e.u, e.v);
        EXPECT_EQ(p[e.u], p[e.v]);
        EXPECT_FALSE(g.has_edge(e.u, e.v));
        EXPECT_TRUE(seen.insert({e.u, e.v}).second);
    }
}

TEST(MixingRatio, Values) {
    EXPECT_NEAR(mixing_ratio(barbell(), barbell_split()), 1.0 / 7.0, 1e-15);
    EXPECT_EQ(mixing_ratio(barbell(), Partition::all_in_one(6)), 0.0);
    EXPECT_EQ(mixing_ratio(triangle(), Partition::singletons(3)), 1.0);
}

TEST(AddEdges, KeepsLabelsAndWeights) {
    const Graph g = path3();
    const std::vector<CandidateEdge> extra{{0, 2}};
    const Graph h = add_edges(g, extra);
    EXPECT_EQ(h.edge_count(), 3u);
    EXPECT_EQ(h.total_weight(), 3.0);
    EXPECT_EQ(h.label(2), "3");
    EXPECT_TRUE(h.has_edge(0, 2));
}

TEST(SimulateLoop, ZeroRounds) {
    LoopConfig cfg;
    cfg.rounds = 0;
    const auto t = simulate_loop(barbell(), cfg);
    ASSERT_EQ(t.records.size(), 1u);
    EXPECT_EQ(t.records[0].round, 0u);
    EXPECT_NEAR(t.records[0].q, 5.0 / 14.0, 1e-12);
    EXPECT_EQ(t.final_graph.edge_count(), 7u);
}

TEST(SimulateLoop, ZeroAcceptanceIsInvariant) {
    const Graph g = planted_rings(4, 12, 0.15, 2);
    LoopConfig cfg;
    cfg.rounds = 6;
    cfg.acceptance_probability = 0.0;
    cfg.seed = 4;
    const auto t = simulate_loop(g, cfg);
    ASSERT_EQ(t.records.size(), 7u);
    for (const auto& r : t.records) {
        EXPECT_EQ(r.edges_added, 0u);
        EXPECT_EQ(r.q, t.records[0].q);
        EXPECT_EQ(r.communities, t.records[0].communities);
        EXPECT_EQ(r.mixing_ratio, t.records[0].mixing_ratio);
    }
    EXPECT_EQ(t.final_graph.edge_count(), g.edge_count());
}

TEST(SimulateLoop, PathClosesTriangle) {
    LoopConfig cfg;
    cfg.rounds = 1;
    cfg.keep_history = true;
    const auto t = simulate_loop(path3(), cfg);
    ASSERT_EQ(t.records.size(), 2u);
    EXPECT_EQ(t.records[1].edges_added, 1u);
    EXPECT_TRUE(t.final_graph.has_edge(0, 2));
    EXPECT_EQ(t.history[0].recommended_from, Partition::all_in_one(3));
    // Detection on the path and on the triangle both yields one community, Q = 0.
    EXPECT_NEAR(t.records[0].q, 0.0, 1e-12);
    EXPECT_NEAR(t.records[1].q, 0.0, 1e-12);
    EXPECT_EQ(t.records[1].mixing_ratio, 0.0);
}

TEST(SimulateLoop, AddedEdgesAreIntraCommunityAndNovel) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = random_graph(50, 0.08, seed);
        LoopConfig cfg;
        cfg.rounds = 5;
        cfg.recommendations_per_node = 2;
        cfg.acceptance_probability = 0.7;
        cfg.detection = DetectionSeedPolicy::per_round;
        cfg.seed = seed;
        cfg.keep_history = true;
        const auto t = simulate_loop(g, cfg);
        Graph current = g;
        for (std::size_t r = 0; r < t.history.size(); ++r) {
            const auto& h = t.history[r];
            EXPECT_LE(h.added.size(), g.node_count() * cfg.recommendations_per_node);
            EXPECT_EQ(h.added.size(), t.records[r + 1].edges_added);
            const double before = mixing_ratio(current, h.recommended_from);
            for (const auto& e : h.added) {
                EXPECT_EQ(h.recommended_from[e.u], h.recommended_from[e.v]);
                EXPECT_FALSE(current.has_edge(e.u, e.v));
            }
            current = add_edges(current, h.added);
            // Inter-community weight is unchanged under the recommending partition.
            if (!h.added.empty()) {
                EXPECT_LT(mixing_ratio(current, h.recommended_from), before);
            }
        }
        EXPECT_EQ(current.edge_count(), t.final_graph.edge_count());
    }
}

TEST(SimulateLoop, MixingRatioStrictlyDecreases) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        LoopConfig cfg;
        cfg.rounds = 5;
        cfg.seed = seed;
        const auto t = simulate_loop(planted_rings(4, 12, 0.15, seed), cfg);
        for (std::size_t r = 1; r < t.records.size(); ++r) {
            ASSERT_GE(t.records[r].edges_added, 1u);
            EXPECT_EQ(t.records[r].communities, 4u);
            EXPECT_LT(t.records[r].mixing_ratio, t.records[r - 1].mixing_ratio) << seed << " round " << r;
        }
    }
}

TEST(SimulateLoop, Deterministic) {
    LoopConfig cfg;
    cfg.rounds = 4;
    cfg.acceptance_probability = 0.5;
    cfg.seed = 21;
    const Graph g = random_graph(40, 0.1, 21);
    const auto a = simulate_loop(g, cfg);
    const auto b = simulate_loop(g, cfg);
    std::ostringstream sa, sb;
    write_trajectory_csv(sa, a);
    write_trajectory_csv(sb, b);
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_EQ(a.final_partition, b.final_partition);
}

TEST(SimulateLoop, Validation) {
    LoopConfig cfg;
    cfg.acceptance_probability = 1.5;
    EXPECT_THROW(simulate_loop(barbell(), cfg), ValidationError);
    EXPECT_THROW(simulate_loop(GraphBuilder(3).build(), LoopConfig{}), UndefinedModularityError);
}

TEST(TrajectoryCsv, Format) {
    LoopConfig cfg;
    cfg.rounds = 1;
    const auto t = simulate_loop(path3(), cfg);
    std::ostringstream out;
    write_trajectory_csv(out, t);
    EXPECT_EQ(out.str(), "round,q,communities,edges_added,mixing_ratio\n0,0,1,0,0\n1,0,1,1,0\n");
}

TEST(Policy, Names) {
    EXPECT_EQ(parse_policy("fixed"), DetectionSeedPolicy::fixed);
    EXPECT_EQ(parse_policy("per-round"), DetectionSeedPolicy::per_round);
    EXPECT_EQ(policy_name(DetectionSeedPolicy::per_round), "per-round");
    EXPECT_THROW(parse_policy("sometimes"), ValidationError);
}
