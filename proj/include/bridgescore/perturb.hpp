#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "bridgescore/bridge.hpp"
#include "bridgescore/community.hpp"
#include "bridgescore/error.hpp"
#include "bridgescore/graph.hpp"
#include "bridgescore/metrics.hpp"

namespace bridgescore {

struct RemovalResult {
    ForwardGraph graph;
    std::size_t missing = 0; // requested ids not present in the graph
};

/// Copy of `g` without the nodes flagged in `drop` and all their incident edges.
inline ForwardGraph remove_nodes(const ForwardGraph& g, const std::vector<bool>& drop) {
    ForwardGraph out;
    constexpr auto gone = static_cast<NodeIndex>(-1);
    std::vector<NodeIndex> remap(g.node_count(), gone);
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (!drop[v]) {
            remap[v] = out.add_node(g.node(v));
        }
    }
    for (const auto& e : g.edges()) {
        if (remap[e.source] != gone && remap[e.target] != gone) {
            out.add_edge(remap[e.source], remap[e.target], e.weight);
        }
    }
    return out;
}

inline ForwardGraph remove_nodes(const ForwardGraph& g, std::span<const NodeIndex> nodes) {
    std::vector<bool> drop(g.node_count(), false);
    for (const NodeIndex v : nodes) {
        drop.at(v) = true;
    }
    return remove_nodes(g, drop);
}

/// Removes nodes by channel id. Unknown ids are ignored and counted.
inline RemovalResult remove_nodes(const ForwardGraph& g, std::span<const std::string> ids) {
    std::vector<bool> drop(g.node_count(), false);
    std::size_t missing = 0;
    for (const auto& id : ids) {
        if (const auto v = g.find(id)) {
            drop[*v] = true;
        } else {
            ++missing;
        }
    }
    return RemovalResult{remove_nodes(g, drop), missing};
}

struct PerturbationReport {
    std::vector<std::string> removed;
    std::size_t missing = 0;
    std::size_t nodes_before = 0;
    std::size_t nodes_after = 0;
    std::size_t edges_before = 0;
    std::size_t edges_after = 0;
    double density_before = 0.0;
    double density_after = 0.0;
    double delta_density = 0.0;
    // Empty when the metric is undefined on that graph (no reachable pair / no edge).
    std::optional<double> avg_path_before;
    std::optional<double> avg_path_after;
    std::optional<std::size_t> communities_before;
    std::optional<std::size_t> communities_after;
    double resolution = 2.2;
    std::uint64_t seed = 0;
};

struct PerturbationOptions {
    double resolution = 2.2;
    std::uint64_t seed = 0;
    DensityFormula density = DensityFormula::undirected;
};

namespace detail {

inline std::optional<double> try_average_path_length(const ForwardGraph& g) {
    const auto acc = reachable_distances(g);
    if (acc.pairs == 0) {
        return std::nullopt;
    }
    return static_cast<double>(acc.total_hops) / static_cast<double>(acc.pairs);
}

inline std::optional<std::size_t> try_community_count(const ForwardGraph& g, double resolution, std::uint64_t seed) {
    if (g.edge_count() == 0) {
        return std::nullopt;
    }
    return louvain(g, resolution, seed).community_count;
}

} // namespace detail

/// Removes `targets` and measures density, reachable-pair path length and
/// Louvain community count on both graphs with identical settings.
inline PerturbationReport perturbation_report(const ForwardGraph& g, std::span<const std::string> targets,
                                              const PerturbationOptions& opts = {}) {
    auto [after, missing] = remove_nodes(g, targets);
    PerturbationReport r;
    for (const auto& t : targets) {
        if (g.find(t)) {
            r.removed.push_back(normalize_id(t));
        }
    }
    r.missing = missing;
    r.resolution = opts.resolution;
    r.seed = opts.seed;
    r.nodes_before = g.node_count();
    r.nodes_after = after.node_count();
    r.edges_before = g.edge_count();
    r.edges_after = after.edge_count();
    r.density_before = density(g, opts.density);
    r.density_after = density(after, opts.density);
    r.delta_density = r.density_before - r.density_after;
    r.avg_path_before = detail::try_average_path_length(g);
    r.avg_path_after = detail::try_average_path_length(after);
    r.communities_before = detail::try_community_count(g, opts.resolution, opts.seed);
    r.communities_after = detail::try_community_count(after, opts.resolution, opts.seed);
    return r;
}

struct GridEntry {
    WeightTriple weights;
    double delta_density = 0.0;
    std::vector<NodeIndex> top_nodes; // best first
};

struct GridSearchResult {
    std::vector<GridEntry> entries; // lexicographic by (w_i, w_e, w_c)
    std::size_t best = 0;           // index into entries
    std::size_t k = 0;
    int lo = 1;
    int hi = 10;
    double density_before = 0.0;
};

struct GridOptions {
    std::size_t k = 12;
    int lo = 1;
    int hi = 10;
    DensityFormula density = DensityFormula::undirected;
    unsigned threads = 0; // 0: hardware concurrency
};

/// Exhaustive integer weight search over [lo, hi]^3. Metrics are computed once on
/// the intact graph; each triple only re-weights them, takes the top k and
/// measures the density drop after removing those nodes. The argmax keeps the
/// lexicographically smallest triple on ties.
inline GridSearchResult grid_search(const ForwardGraph& g, std::span<const NodeMetrics> metrics,
                                    const GridOptions& opts = {}) {
    if (opts.lo < 1 || opts.lo > opts.hi) {
        throw Error(ErrorKind::invalid_argument, "weight grid needs 1 <= lo <= hi");
    }
    if (opts.k < 1 || opts.k >= g.node_count()) {
        throw Error(ErrorKind::invalid_argument, "k must satisfy 1 <= k < |V|");
    }
    if (metrics.size() != g.node_count()) {
        throw Error(ErrorKind::missing_metric, "metrics table does not cover every node");
    }
    const std::size_t n = g.node_count();
    const std::size_t nodes_after = n - opts.k;
    GridSearchResult result;
    result.k = opts.k;
    result.lo = opts.lo;
    result.hi = opts.hi;
    result.density_before = density(g, opts.density);

    std::vector<NormalizedTriple> norm(n);
    std::vector<std::size_t> incident(n);
    for (NodeIndex v = 0; v < n; ++v) {
        norm[v] = normalized(metrics[v]);
        incident[v] = g.successors(v).size() + g.predecessors(v).size();
    }

    const auto span = static_cast<std::size_t>(opts.hi - opts.lo + 1);
    result.entries.resize(span * span * span);
    const auto evaluate = [&](std::size_t index, std::vector<double>& scores, std::vector<char>& in_top) {
        auto& entry = result.entries[index];
        entry.weights = WeightTriple{static_cast<double>(opts.lo + static_cast<int>(index / (span * span))),
                                     static_cast<double>(opts.lo + static_cast<int>(index / span % span)),
                                     static_cast<double>(opts.lo + static_cast<int>(index % span))};
        for (NodeIndex v = 0; v < n; ++v) {
            scores[v] = bridge_score(norm[v], entry.weights);
        }
        entry.top_nodes = order_by_score(g, scores, opts.k);
        // Edges touching the removed set, counting edges inside it once.
        std::size_t lost = 0;
        for (const NodeIndex v : entry.top_nodes) {
            in_top[v] = 1;
        }
        for (const NodeIndex v : entry.top_nodes) {
            lost += incident[v];
            for (const auto& [u, w] : g.successors(v)) {
                lost -= in_top[u] ? 1 : 0;
            }
        }
        for (const NodeIndex v : entry.top_nodes) {
            in_top[v] = 0;
        }
        entry.delta_density = result.density_before - density(nodes_after, g.edge_count() - lost, opts.density);
    };

    const std::size_t total = result.entries.size();
    unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        std::vector<double> scores(n);
        std::vector<char> in_top(n, 0);
        for (std::size_t i = next++; i < total; i = next++) {
            evaluate(i, scores, in_top);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    for (std::size_t i = 1; i < total; ++i) {
        if (result.entries[i].delta_density > result.entries[result.best].delta_density) {
            result.best = i;
        }
    }
    return result;
}

inline GridSearchResult grid_search(const ForwardGraph& g, const GridOptions& opts = {},
                                    const EigenvectorOptions& eig = {}) {
    const auto metrics = compute_metrics(g, eig);
    return grid_search(g, metrics, opts);
}

/// Per-node count of grid triples whose top-k contains the node.
struct FrequencyTable {
    std::vector<std::uint64_t> counts; // indexed by NodeIndex
    std::size_t grid_size = 0;
};

inline FrequencyTable frequency_analysis(const GridSearchResult& r, std::size_t node_count) {
    FrequencyTable table{std::vector<std::uint64_t>(node_count, 0), r.entries.size()};
    for (const auto& entry : r.entries) {
        for (const NodeIndex v : entry.top_nodes) {
            ++table.counts.at(v);
        }
    }
    return table;
}

struct ComparativeRow {
    std::string metric;
    std::vector<NodeIndex> removed;
    PerturbationReport report;
};

/// Removes the top k nodes by each single component and by the Bridge Score and
/// reports the resulting network metrics. Clustering removes the lowest
/// coefficients first, since weakly clustered nodes are the ones spanning groups.
inline std::vector<ComparativeRow> comparative_analysis(const ForwardGraph& g, std::span<const NodeMetrics> metrics,
                                                        std::size_t k, const PerturbationOptions& opts = {},
                                                        const WeightTriple& weights = default_weights()) {
    if (k < 1 || k >= g.node_count()) {
        throw Error(ErrorKind::invalid_argument, "k must satisfy 1 <= k < |V|");
    }
    const std::size_t n = g.node_count();
    std::vector<double> indeg(n), eig(n), low_clustering(n);
    for (NodeIndex v = 0; v < n; ++v) {
        indeg[v] = static_cast<double>(metrics[v].indegree);
        eig[v] = metrics[v].eigenvector;
        low_clustering[v] = -metrics[v].clustering;
    }
    const auto scores = bridge_scores(metrics, weights);

    std::vector<ComparativeRow> rows;
    const auto add_row = [&](std::string name, std::span<const double> key) {
        ComparativeRow row{std::move(name), order_by_score(g, key, k), {}};
        std::vector<std::string> ids;
        for (const NodeIndex v : row.removed) {
            ids.push_back(g.node(v).id);
        }
        row.report = perturbation_report(g, ids, opts);
        rows.push_back(std::move(row));
    };
    add_row("indegree", indeg);
    add_row("eigenvector", eig);
    add_row("clustering", low_clustering);
    add_row("bridge_score", scores);
    return rows;
}

} // namespace bridgescore
