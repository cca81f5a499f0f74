#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "bridgescore/error.hpp"
#include "bridgescore/graph.hpp"

namespace bridgescore {

/// Raw and min-max normalized values of the three Bridge Score components for one node.
/// Normalized fields stay empty until the population has been normalized.
struct NodeMetrics {
    std::uint64_t indegree = 0;
    double eigenvector = 0.0;
    double clustering = 0.0;
    std::optional<double> indegree_norm;
    std::optional<double> eigenvector_norm;
    std::optional<double> clustering_norm;

    friend bool operator==(const NodeMetrics&, const NodeMetrics&) = default;
};

/// Number of distinct in-neighbours per node; edge weights do not count.
inline std::vector<std::uint64_t> indegree_centrality(const ForwardGraph& g) {
    std::vector<std::uint64_t> result(g.node_count());
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        result[v] = g.predecessors(v).size();
    }
    return result;
}

struct EigenvectorOptions {
    double tolerance = 1e-8;
    int max_iterations = 1000;
    /// Uniform teleport share mixed into every step; 0 gives the plain power method.
    double teleport = 0.15;
};

/// Eigenvector centrality with influence flowing along forward direction: a
/// node's score is proportional to the summed scores of its in-neighbours.
///
/// Power iteration on (1 - t) A^T + (t / n) J, where A is the unweighted
/// adjacency matrix, J the all-ones matrix and t the teleport share. For t > 0
/// the matrix is strictly positive, so the dominant eigenvector is unique and
/// positive even when the graph is not strongly connected. Iterates are
/// L2-normalized; the loop stops once the L-infinity step falls below the
/// tolerance.
inline std::vector<double> eigenvector_centrality(const ForwardGraph& g, const EigenvectorOptions& opts = {}) {
    const std::size_t n = g.node_count();
    if (n == 0) {
        throw Error(ErrorKind::undefined_metric, "eigenvector centrality of an empty graph");
    }
    if (!(opts.tolerance > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "eigenvector tolerance must be positive");
    }
    if (opts.teleport < 0.0 || opts.teleport > 1.0) {
        throw Error(ErrorKind::invalid_argument, "teleport share must lie in [0, 1]");
    }
    const double follow = 1.0 - opts.teleport;
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        double mass = 0.0;
        for (double xi : x) {
            mass += xi;
        }
        const double jump = opts.teleport * mass / static_cast<double>(n);
        double norm2 = 0.0;
        for (NodeIndex v = 0; v < n; ++v) {
            double acc = 0.0;
            for (const auto& [u, w] : g.predecessors(v)) {
                acc += x[u];
            }
            y[v] = follow * acc + jump;
            norm2 += y[v] * y[v];
        }
        if (norm2 == 0.0) {
            throw Error(ErrorKind::undefined_metric,
                        "power iteration collapsed to the zero vector (graph has no cycles; enable teleport)");
        }
        const double inv = 1.0 / std::sqrt(norm2);
        residual = 0.0;
        for (NodeIndex v = 0; v < n; ++v) {
            y[v] *= inv;
            residual = std::max(residual, std::abs(y[v] - x[v]));
        }
        x.swap(y);
        if (residual < opts.tolerance) {
            return x;
        }
    }
    throw NonConvergenceError(residual, opts.max_iterations);
}

/// Local clustering coefficient on the undirected, unweighted projection.
/// Nodes with fewer than two distinct neighbours get 0.
inline std::vector<double> local_clustering(const ForwardGraph& g) {
    const auto nbrs = g.undirected_neighbors();
    const std::size_t n = g.node_count();
    std::vector<double> result(n, 0.0);
    std::vector<char> mark(n, 0);
    for (NodeIndex v = 0; v < n; ++v) {
        const auto& nv = nbrs[v];
        const std::size_t k = nv.size();
        if (k < 2) {
            continue;
        }
        for (NodeIndex u : nv) {
            mark[u] = 1;
        }
        std::uint64_t links = 0;
        for (NodeIndex u : nv) {
            for (NodeIndex w : nbrs[u]) {
                if (w > u && mark[w]) {
                    ++links;
                }
            }
        }
        for (NodeIndex u : nv) {
            mark[u] = 0;
        }
        result[v] = 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
    }
    return result;
}

/// (x - min) / (max - min); a constant input maps to all zeros.
inline std::vector<double> min_max_normalize(std::span<const double> values) {
    if (values.empty()) {
        throw Error(ErrorKind::invalid_argument, "min-max normalization of an empty set");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double min = *lo;
    const double range = *hi - *lo;
    std::vector<double> result(values.size(), 0.0);
    if (range > 0.0) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            result[i] = (values[i] - min) / range;
        }
    }
    return result;
}

/// All three components for every node, normalized over the whole population.
inline std::vector<NodeMetrics> compute_metrics(const ForwardGraph& g, const EigenvectorOptions& eig = {}) {
    const std::size_t n = g.node_count();
    std::vector<NodeMetrics> result(n);
    if (n == 0) {
        return result;
    }
    const auto indeg = indegree_centrality(g);
    const auto ev = eigenvector_centrality(g, eig);
    const auto cc = local_clustering(g);
    std::vector<double> indeg_real(indeg.begin(), indeg.end());
    const auto indeg_norm = min_max_normalize(indeg_real);
    const auto ev_norm = min_max_normalize(ev);
    const auto cc_norm = min_max_normalize(cc);
    for (NodeIndex v = 0; v < n; ++v) {
        result[v] = NodeMetrics{indeg[v], ev[v], cc[v], indeg_norm[v], ev_norm[v], cc_norm[v]};
    }
    return result;
}

} // namespace bridgescore
