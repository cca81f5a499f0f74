#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "bridgescore/error.hpp"
#include "bridgescore/graph.hpp"

namespace bridgescore {

using CommunityId = std::size_t;

struct Partition {
    std::vector<CommunityId> assignment; // indexed by NodeIndex, ids dense from 0
    double modularity = 0.0;
    double resolution = 1.0;
    std::size_t community_count = 0;
};

namespace detail {

/// Undirected weighted projection: A_uv = w(u->v) + w(v->u).
struct WeightedAdjacency {
    std::vector<std::vector<std::pair<std::size_t, double>>> neighbors; // no self entries
    std::vector<double> self;                                            // A_ii
    double two_m = 0.0;

    std::size_t size() const { return neighbors.size(); }

    double degree(std::size_t i) const {
        double k = self[i];
        for (const auto& [j, w] : neighbors[i]) {
            k += w;
        }
        return k;
    }
};

inline WeightedAdjacency undirected_projection(const ForwardGraph& g) {
    WeightedAdjacency adj;
    const std::size_t n = g.node_count();
    adj.neighbors.resize(n);
    adj.self.assign(n, 0.0);
    for (NodeIndex u = 0; u < n; ++u) {
        // Merge out- and in-lists (both sorted) so each neighbour appears once.
        const auto& out = g.successors(u);
        const auto& in = g.predecessors(u);
        auto a = out.begin();
        auto b = in.begin();
        while (a != out.end() || b != in.end()) {
            if (b == in.end() || (a != out.end() && a->first < b->first)) {
                adj.neighbors[u].emplace_back(a->first, static_cast<double>(a->second));
                ++a;
            } else if (a == out.end() || b->first < a->first) {
                adj.neighbors[u].emplace_back(b->first, static_cast<double>(b->second));
                ++b;
            } else {
                adj.neighbors[u].emplace_back(a->first, static_cast<double>(a->second + b->second));
                ++a;
                ++b;
            }
        }
    }
    adj.two_m = 2.0 * static_cast<double>(g.total_weight());
    return adj;
}

/// Renumbers labels to 0..k-1 in order of first appearance; returns k.
inline std::size_t compact_labels(std::vector<CommunityId>& labels) {
    std::vector<CommunityId> remap;
    constexpr auto unset = static_cast<CommunityId>(-1);
    CommunityId next = 0;
    for (auto& c : labels) {
        if (c >= remap.size()) {
            remap.resize(c + 1, unset);
        }
        if (remap[c] == unset) {
            remap[c] = next++;
        }
        c = remap[c];
    }
    return next;
}

inline double modularity(const WeightedAdjacency& adj, std::span<const CommunityId> assignment, double resolution) {
    const std::size_t communities =
        assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
    std::vector<double> inside(communities, 0.0);
    std::vector<double> total(communities, 0.0);
    for (std::size_t i = 0; i < adj.size(); ++i) {
        const CommunityId c = assignment[i];
        inside[c] += adj.self[i];
        total[c] += adj.self[i];
        for (const auto& [j, w] : adj.neighbors[i]) {
            total[c] += w;
            if (assignment[j] == c) {
                inside[c] += w;
            }
        }
    }
    double q = 0.0;
    for (std::size_t c = 0; c < communities; ++c) {
        const double share = total[c] / adj.two_m;
        q += inside[c] / adj.two_m - resolution * share * share;
    }
    return q;
}

} // namespace detail

/// Newman modularity with resolution on the undirected weighted projection:
/// Q = (1/2m) sum_ij [A_ij - resolution * k_i k_j / 2m] delta(c_i, c_j).
inline double modularity(const ForwardGraph& g, std::span<const CommunityId> assignment, double resolution = 1.0) {
    if (assignment.size() != g.node_count()) {
        throw Error(ErrorKind::partition_mismatch,
                    "partition covers " + std::to_string(assignment.size()) + " nodes but the graph has " +
                        std::to_string(g.node_count()));
    }
    if (g.total_weight() == 0) {
        throw Error(ErrorKind::undefined_partition, "modularity is undefined on a graph without edges");
    }
    return detail::modularity(detail::undirected_projection(g), assignment, resolution);
}

inline double modularity(const ForwardGraph& g, const Partition& p, double resolution) {
    return modularity(g, std::span<const CommunityId>(p.assignment), resolution);
}

/// Louvain community detection: repeated local-move and aggregation phases until
/// no node changes community. The visit order within each level is shuffled by a
/// generator seeded with `seed`, so equal inputs give equal partitions. A node
/// leaves its community only for a strictly better one; among equally good
/// targets the lowest community id wins.
inline Partition louvain(const ForwardGraph& g, double resolution = 2.2, std::uint64_t seed = 0) {
    if (!(resolution > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "resolution must be positive");
    }
    if (g.edge_count() == 0) {
        throw Error(ErrorKind::undefined_partition, "louvain needs at least one edge");
    }
    constexpr double eps = 1e-12;
    std::mt19937_64 rng(seed);

    detail::WeightedAdjacency level = detail::undirected_projection(g);
    const double two_m = level.two_m;
    std::vector<CommunityId> membership(g.node_count());
    std::iota(membership.begin(), membership.end(), CommunityId{0});

    for (;;) {
        const std::size_t n = level.size();
        std::vector<double> degree(n);
        for (std::size_t i = 0; i < n; ++i) {
            degree[i] = level.degree(i);
        }
        std::vector<CommunityId> community(n);
        std::iota(community.begin(), community.end(), CommunityId{0});
        std::vector<double> total = degree;

        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);

        std::vector<double> link(n, 0.0);
        std::vector<CommunityId> touched;
        bool any_move = false;
        for (bool moved = true; moved;) {
            moved = false;
            for (const std::size_t i : order) {
                const CommunityId current = community[i];
                const double ki = degree[i];
                for (const auto& [j, w] : level.neighbors[i]) {
                    const CommunityId c = community[j];
                    if (link[c] == 0.0) {
                        touched.push_back(c);
                    }
                    link[c] += w;
                }
                total[current] -= ki;
                const auto gain = [&](CommunityId c) { return link[c] - resolution * total[c] * ki / two_m; };

                CommunityId best = current;
                double best_gain = gain(current);
                // Ascending visit keeps the lowest id on ties.
                std::sort(touched.begin(), touched.end());
                for (const CommunityId c : touched) {
                    if (c == current) {
                        continue;
                    }
                    const double gc = gain(c);
                    if (gc > best_gain + eps) {
                        best = c;
                        best_gain = gc;
                    }
                }
                total[best] += ki;
                community[i] = best;
                if (best != current) {
                    moved = true;
                    any_move = true;
                }
                for (const CommunityId c : touched) {
                    link[c] = 0.0;
                }
                touched.clear();
            }
        }
        if (!any_move) {
            break;
        }

        const std::size_t k = detail::compact_labels(community);
        for (auto& m : membership) {
            m = community[m];
        }
        detail::WeightedAdjacency next;
        next.two_m = two_m;
        next.self.assign(k, 0.0);
        next.neighbors.resize(k);
        std::vector<std::vector<std::pair<std::size_t, double>>> buckets(k);
        for (std::size_t i = 0; i < n; ++i) {
            const CommunityId ci = community[i];
            next.self[ci] += level.self[i];
            for (const auto& [j, w] : level.neighbors[i]) {
                const CommunityId cj = community[j];
                if (ci == cj) {
                    next.self[ci] += w;
                } else {
                    buckets[ci].emplace_back(cj, w);
                }
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            auto& b = buckets[c];
            std::sort(b.begin(), b.end());
            for (const auto& [j, w] : b) {
                if (!next.neighbors[c].empty() && next.neighbors[c].back().first == j) {
                    next.neighbors[c].back().second += w;
                } else {
                    next.neighbors[c].emplace_back(j, w);
                }
            }
        }
        level = std::move(next);
        if (k == 1) {
            break;
        }
    }

    Partition p;
    p.community_count = detail::compact_labels(membership);
    p.assignment = std::move(membership);
    p.resolution = resolution;
    p.modularity = modularity(g, std::span<const CommunityId>(p.assignment), resolution);
    return p;
}

} // namespace bridgescore
