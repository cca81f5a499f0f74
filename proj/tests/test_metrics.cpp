#include <gtest/gtest.h>

#include <random>

#include "bridgescore/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace bridgescore;

TEST(Indegree, StarCenterCollectsAllLeaves) {
    const auto g = fixtures::build(fixtures::in_star(4));
    const auto d = indegree_centrality(g);
    EXPECT_EQ(d[0], 4u);
    for (NodeIndex v = 1; v <= 4; ++v) EXPECT_EQ(d[v], 0u);
}

TEST(Indegree, CycleIsUniform) {
    const auto d = indegree_centrality(fixtures::build(fixtures::directed_cycle(3)));
    EXPECT_EQ(d, (std::vector<std::uint64_t>{1, 1, 1}));
}

TEST(Indegree, IgnoresWeights) {
    ForwardGraph g;
    g.add_edge("a", "b");
    g.add_edge("a", "b");
    g.add_edge("c", "b");
    EXPECT_EQ(indegree_centrality(g)[*g.find("b")], 2u);
}

TEST(Indegree, MatchesColumnSums) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto es = fixtures::random_digraph(30, 0.1, seed);
        EXPECT_EQ(indegree_centrality(fixtures::build(es)), oracles::column_sums(oracles::adjacency(es)));
    }
}

TEST(Eigenvector, CycleIsUniform) {
    const auto ev = eigenvector_centrality(fixtures::build(fixtures::directed_cycle(5)));
    for (double x : ev) EXPECT_NEAR(x, 1.0 / std::sqrt(5.0), 1e-12);
}

TEST(Eigenvector, InfluenceFlowsToTheReceiver) {
    ForwardGraph g;
    g.add_edge("A", "B");
    const auto ev = eigenvector_centrality(g);
    EXPECT_GT(ev[*g.find("B")], ev[*g.find("A")]);
}

TEST(Eigenvector, OutputIsUnitLengthAndPositive) {
    const auto g = fixtures::build(fixtures::random_digraph(25, 0.1, 3));
    const auto ev = eigenvector_centrality(g);
    double norm = 0;
    for (double x : ev) {
        EXPECT_GT(x, 0.0);
        norm += x * x;
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
}

TEST(Eigenvector, MatchesDensePowerMethodOnStronglyConnectedGraphs) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = 2 + seed % 9; // 2..10 nodes
        const auto es = fixtures::strongly_connected(n, 0.3, seed);
        const auto g = fixtures::build(es);
        const auto a = oracles::adjacency(es);
        for (double teleport : {0.15, 0.0}) {
            // Plain power iteration is only guaranteed for aperiodic graphs; the
            // damped variant always converges.
            EigenvectorOptions opts{1e-13, 100000, teleport};
            std::vector<double> ev;
            try {
                ev = eigenvector_centrality(g, opts);
            } catch (const NonConvergenceError&) {
                ASSERT_EQ(teleport, 0.0);
                continue;
            }
            const auto expected = oracles::dense_power_method(a, teleport, 1e-14);
            for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ev[i], expected[i], 1e-8) << "seed " << seed;
        }
    }
}

TEST(Eigenvector, MatchesEigenDecomposition) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto es = fixtures::random_digraph(12 + seed % 10, 0.15, seed);
        const auto ev = eigenvector_centrality(fixtures::build(es), {1e-13, 100000, 0.15});
        const auto expected = oracles::eigen_dominant(oracles::adjacency(es), 0.15);
        for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], expected[i], 1e-8) << "seed " << seed;
    }
}

TEST(Eigenvector, RelabelingInvariance) {
    const auto es = fixtures::random_digraph(20, 0.12, 9);
    std::vector<std::size_t> perm(es.nodes);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(1));
    fixtures::EdgeSet relabeled{es.nodes, {}};
    for (const auto& [u, v] : es.edges) relabeled.edges.emplace_back(perm[u], perm[v]);
    const auto a = eigenvector_centrality(fixtures::build(es), {1e-13, 100000, 0.15});
    const auto b = eigenvector_centrality(fixtures::build(relabeled), {1e-13, 100000, 0.15});
    for (std::size_t i = 0; i < es.nodes; ++i) EXPECT_NEAR(a[i], b[perm[i]], 1e-10);
}

TEST(Eigenvector, NonConvergenceCarriesResidual) {
    // A 2-cycle started off the eigenvector oscillates forever without teleport.
    ForwardGraph g;
    g.add_edge("a", "b");
    g.add_edge("b", "a");
    g.add_edge("c", "a");
    try {
        eigenvector_centrality(g, {1e-12, 50, 0.0});
        FAIL() << "expected non-convergence";
    } catch (const NonConvergenceError& e) {
        EXPECT_GT(e.residual(), 1e-12);
        EXPECT_EQ(e.iterations(), 50);
    }
}

TEST(Eigenvector, RejectsEmptyGraphAndBadTolerance) {
    EXPECT_THROW(eigenvector_centrality(ForwardGraph{}), Error);
    ForwardGraph g;
    g.add_edge("a", "b");
    EXPECT_THROW(eigenvector_centrality(g, {0.0, 10, 0.15}), Error);
}

TEST(Clustering, TriangleAnyOrientation) {
    ForwardGraph g;
    g.add_edge("a", "b");
    g.add_edge("c", "b");
    g.add_edge("a", "c");
    for (double c : local_clustering(g)) EXPECT_DOUBLE_EQ(c, 1.0);
}

TEST(Clustering, StarCenterHasNone) {
    const auto c = local_clustering(fixtures::build(fixtures::in_star(4)));
    for (double x : c) EXPECT_DOUBLE_EQ(x, 0.0);
}

TEST(Clustering, MatchesTriangleEnumeration) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto es = fixtures::random_digraph(30, 0.15, seed);
        const auto got = local_clustering(fixtures::build(es));
        EXPECT_EQ(got, oracles::clustering(oracles::adjacency(es)));
    }
}

TEST(Clustering, InvariantUnderEdgeReversal) {
    const auto es = fixtures::random_digraph(25, 0.15, 17);
    fixtures::EdgeSet reversed{es.nodes, {}};
    for (const auto& [u, v] : es.edges) reversed.edges.emplace_back(v, u);
    EXPECT_EQ(local_clustering(fixtures::build(es)), local_clustering(fixtures::build(reversed)));
}

TEST(MinMax, AffineMap) {
    const std::vector<double> in{2, 4, 6};
    EXPECT_EQ(min_max_normalize(in), (std::vector<double>{0, 0.5, 1}));
}

TEST(MinMax, ConstantInputMapsToZero) {
    const std::vector<double> in{3, 3, 3};
    EXPECT_EQ(min_max_normalize(in), (std::vector<double>{0, 0, 0}));
}

TEST(MinMax, MaximumMapsToExactlyOne) {
    // e.g. the most-forwarded channel gets indegree_norm 1.0
    const std::vector<double> in{7, 5, 2, 7, 3};
    const auto out = min_max_normalize(in);
    EXPECT_EQ(out[0], 1.0);
    EXPECT_EQ(out[3], 1.0);
    EXPECT_EQ(out[2], 0.0);
}

TEST(MinMax, OrderPreservingOnRandomInput) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> dist(0, 5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> in(40);
        for (auto& x : in) x = dist(rng);
        const auto out = min_max_normalize(in);
        for (std::size_t i = 0; i < in.size(); ++i) {
            EXPECT_GE(out[i], 0.0);
            EXPECT_LE(out[i], 1.0);
            for (std::size_t j = 0; j < in.size(); ++j) {
                if (in[i] < in[j]) {
                    EXPECT_LE(out[i], out[j]);
                }
            }
        }
    }
}

TEST(MinMax, EmptyIsRejected) { EXPECT_THROW(min_max_normalize(std::vector<double>{}), Error); }

TEST(ComputeMetrics, PopulatesNormalizedFields) {
    const auto g = fixtures::build(fixtures::random_digraph(15, 0.2, 2));
    const auto m = compute_metrics(g);
    ASSERT_EQ(m.size(), g.node_count());
    for (const auto& x : m) {
        ASSERT_TRUE(x.indegree_norm && x.eigenvector_norm && x.clustering_norm);
        EXPECT_GE(*x.indegree_norm, 0.0);
        EXPECT_LE(*x.indegree_norm, 1.0);
    }
}
