#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "bridgescore/bridge.hpp"
#include "bridgescore/reports.hpp"
#include "support/fixtures.hpp"
#include "support/reference_scores.hpp"

using namespace bridgescore;

namespace {

NormalizedTriple inputs(const reference_scores::Row& r) { return {r.indegree_norm, r.eigenvector_norm, r.clustering_norm}; }

} // namespace

TEST(BridgeScore, ReferenceRowsReproduce) {
    for (const auto& r : reference_scores::rows) {
        EXPECT_NEAR(bridge_score(inputs(r), default_weights()), r.printed_score, 1e-4) << r.channel;
    }
}

TEST(BridgeScore, ReferenceOrderingOfTopThree) {
    const auto w = default_weights();
    const double a = bridge_score(inputs(reference_scores::rows[0]), w);
    const double b = bridge_score(inputs(reference_scores::rows[1]), w);
    const double c = bridge_score(inputs(reference_scores::rows[2]), w);
    EXPECT_GT(a, b);
    EXPECT_GT(b, c);
}

TEST(BridgeScore, ReferenceRowsAreNonIncreasing) {
    const auto w = default_weights();
    for (std::size_t i = 1; i < reference_scores::rows.size(); ++i) {
        EXPECT_GE(bridge_score(inputs(reference_scores::rows[i - 1]), w) + 1e-4, bridge_score(inputs(reference_scores::rows[i]), w));
    }
}

TEST(BridgeScore, DefaultWeights) {
    static_assert(default_weights() == WeightTriple{10, 7, 7});
    EXPECT_DOUBLE_EQ(bridge_score(NormalizedTriple{1, 1, 1}, default_weights()), 24.0);
    EXPECT_DOUBLE_EQ(bridge_score(NormalizedTriple{0.5, 0.5, 0.5}, default_weights()), 12.0);
    EXPECT_DOUBLE_EQ(bridge_score(NormalizedTriple{0, 0, 0}, WeightTriple{3, 9, 1}), 0.0);
}

TEST(BridgeScore, MissingNormalizedFieldsAreAnError) {
    NodeMetrics m{3, 0.5, 0.2, 1.0, std::nullopt, 0.1};
    try {
        bridge_score(m, default_weights());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::missing_metric);
    }
}

TEST(BridgeScore, LinearMonotoneAndBounded) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0, 1), weight(0.1, 10);
    for (int trial = 0; trial < 1000; ++trial) {
        const NormalizedTriple m{unit(rng), unit(rng), unit(rng)};
        const WeightTriple w{weight(rng), weight(rng), weight(rng)};
        const double s = bridge_score(m, w);
        const double a = weight(rng);
        EXPECT_NEAR(bridge_score(m, WeightTriple{a * w.indegree, a * w.eigenvector, a * w.clustering}), a * s,
                    1e-12 * a * s + 1e-12);
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, w.indegree + w.eigenvector + w.clustering + 1e-12);
        auto bumped = m;
        bumped.eigenvector = std::min(1.0, m.eigenvector + unit(rng));
        EXPECT_GE(bridge_score(bumped, w), s);
    }
}

TEST(Rank, CycleTiesBreakById) {
    ForwardGraph g;
    g.add_edge("delta", "bravo");
    g.add_edge("bravo", "charlie");
    g.add_edge("charlie", "alpha");
    g.add_edge("alpha", "delta");
    const auto r = rank(g);
    ASSERT_EQ(r.entries.size(), 4u);
    for (const auto& e : r.entries) EXPECT_DOUBLE_EQ(e.score, r.entries[0].score);
    EXPECT_EQ(r.entries[0].id, "alpha");
    EXPECT_EQ(r.entries[1].id, "bravo");
    EXPECT_EQ(r.entries[2].id, "charlie");
    EXPECT_EQ(r.entries[3].id, "delta");
}

TEST(Rank, ScalingWeightsKeepsOrder) {
    const auto g = fixtures::build(fixtures::random_digraph(30, 0.1, 4));
    const auto a = rank(g, WeightTriple{3, 5, 2});
    const auto b = rank(g, WeightTriple{6, 10, 4});
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) EXPECT_EQ(a.entries[i].node, b.entries[i].node);
}

TEST(Rank, MatchesRecomputationFromExportedMetrics) {
    const auto g = fixtures::build(fixtures::random_digraph(20, 0.15, 21));
    const auto metrics = compute_metrics(g);
    std::stringstream csv;
    reports::write_metrics_csv(csv, g, metrics);
    const auto rows = reports::read_metrics_csv(csv);
    ASSERT_EQ(rows.size(), 20u);

    // Spreadsheet-style: score each exported row and sort by (score desc, channel asc).
    std::vector<std::pair<double, std::string>> sheet;
    for (const auto& row : rows) {
        sheet.emplace_back(10 * *row.metrics.indegree_norm + 7 * *row.metrics.eigenvector_norm +
                               7 * *row.metrics.clustering_norm,
                           row.channel);
    }
    std::sort(sheet.begin(), sheet.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    const auto r = rank(g, metrics, default_weights());
    for (std::size_t i = 0; i < sheet.size(); ++i) {
        EXPECT_EQ(r.entries[i].id, sheet[i].second);
        EXPECT_NEAR(r.entries[i].score, sheet[i].first, 1e-12);
    }
}

TEST(Rank, EmptyGraphIsRejected) { EXPECT_THROW(rank(ForwardGraph{}), Error); }
