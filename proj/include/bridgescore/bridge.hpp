#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bridgescore/error.hpp"
#include "bridgescore/graph.hpp"
#include "bridgescore/metrics.hpp"

namespace bridgescore {

/// Weights for in-degree, eigenvector and clustering, in that order.
struct WeightTriple {
    double indegree = 10.0;
    double eigenvector = 7.0;
    double clustering = 7.0;

    friend bool operator==(const WeightTriple&, const WeightTriple&) = default;
    friend auto operator<=>(const WeightTriple&, const WeightTriple&) = default;
};

/// The weights that maximised density disruption on the original forwarding network.
constexpr WeightTriple default_weights() noexcept { return WeightTriple{10.0, 7.0, 7.0}; }

/// Normalized component values as they enter the score.
struct NormalizedTriple {
    double indegree = 0.0;
    double eigenvector = 0.0;
    double clustering = 0.0;
};

constexpr double bridge_score(const NormalizedTriple& m, const WeightTriple& w) noexcept {
    return w.indegree * m.indegree + w.eigenvector * m.eigenvector + w.clustering * m.clustering;
}

inline NormalizedTriple normalized(const NodeMetrics& m) {
    if (!m.indegree_norm || !m.eigenvector_norm || !m.clustering_norm) {
        throw Error(ErrorKind::missing_metric, "normalized metrics are not populated");
    }
    return NormalizedTriple{*m.indegree_norm, *m.eigenvector_norm, *m.clustering_norm};
}

inline double bridge_score(const NodeMetrics& m, const WeightTriple& w) { return bridge_score(normalized(m), w); }

struct RankedNode {
    NodeIndex node;
    std::string id;
    double score;
};

struct BridgeRanking {
    std::vector<RankedNode> entries; // descending score, ties by id ascending
    WeightTriple weights;
};

/// Node indices ordered by descending score, ties broken by ascending id.
/// Only the first `limit` positions are guaranteed sorted.
inline std::vector<NodeIndex> order_by_score(const ForwardGraph& g, std::span<const double> scores,
                                             std::size_t limit = static_cast<std::size_t>(-1)) {
    std::vector<NodeIndex> order(scores.size());
    std::iota(order.begin(), order.end(), NodeIndex{0});
    const auto before = [&](NodeIndex a, NodeIndex b) {
        if (scores[a] != scores[b]) {
            return scores[a] > scores[b];
        }
        return g.node(a).id < g.node(b).id;
    };
    limit = std::min(limit, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(limit), order.end(), before);
    order.resize(limit);
    return order;
}

inline std::vector<double> bridge_scores(std::span<const NodeMetrics> metrics, const WeightTriple& w) {
    std::vector<double> scores(metrics.size());
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        scores[i] = bridge_score(metrics[i], w);
    }
    return scores;
}

/// Ranks nodes from precomputed metrics (normalized over the full population).
inline BridgeRanking rank(const ForwardGraph& g, std::span<const NodeMetrics> metrics, const WeightTriple& w) {
    if (metrics.size() != g.node_count()) {
        throw Error(ErrorKind::missing_metric, "metrics table does not cover every node");
    }
    const auto scores = bridge_scores(metrics, w);
    BridgeRanking ranking{{}, w};
    for (const NodeIndex v : order_by_score(g, scores)) {
        ranking.entries.push_back(RankedNode{v, g.node(v).id, scores[v]});
    }
    return ranking;
}

inline BridgeRanking rank(const ForwardGraph& g, const WeightTriple& w = default_weights(),
                          const EigenvectorOptions& eig = {}) {
    if (g.node_count() == 0) {
        throw Error(ErrorKind::invalid_argument, "cannot rank an empty graph");
    }
    const auto metrics = compute_metrics(g, eig);
    return rank(g, metrics, w);
}

} // namespace bridgescore
