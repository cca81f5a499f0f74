#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bridgescore/error.hpp"
#include "bridgescore/ids.hpp"

namespace bridgescore {

using NodeIndex = std::size_t;
using EdgeWeight = std::uint64_t;

struct ChannelNode {
    std::string id;    // normalized handle
    std::string label; // handle as first seen, minus "@"
    bool is_seed = false;

    friend bool operator==(const ChannelNode&, const ChannelNode&) = default;
};

struct ForwardEdge {
    NodeIndex source;
    NodeIndex target;
    EdgeWeight weight;

    friend bool operator==(const ForwardEdge&, const ForwardEdge&) = default;
};

/// Directed forwarding graph. Parallel forwarding events between the same
/// ordered pair collapse into one edge whose weight counts them; self-forwards
/// are dropped and tallied. Node indices are dense and follow insertion order.
class ForwardGraph {
public:
    using Adjacency = std::map<NodeIndex, EdgeWeight>;

    /// Returns the index of the node for `raw_id`, creating it if needed.
    /// A seed flag, once set, sticks.
    NodeIndex add_node(std::string_view raw_id, bool is_seed = false) {
        std::string id = require_id(raw_id);
        if (auto it = index_.find(id); it != index_.end()) {
            nodes_[it->second].is_seed = nodes_[it->second].is_seed || is_seed;
            return it->second;
        }
        const NodeIndex idx = nodes_.size();
        index_.emplace(id, idx);
        nodes_.push_back(ChannelNode{std::move(id), display_label(raw_id), is_seed});
        out_.emplace_back();
        in_.emplace_back();
        return idx;
    }

    /// Inserts a node whose id is already normalized, keeping its label verbatim.
    NodeIndex add_node(ChannelNode node) {
        if (node.id.empty() || node.id != normalize_id(node.id)) {
            throw Error(ErrorKind::malformed_identifier, "channel id '" + node.id + "' is not normalized");
        }
        if (auto it = index_.find(node.id); it != index_.end()) {
            nodes_[it->second].is_seed = nodes_[it->second].is_seed || node.is_seed;
            return it->second;
        }
        const NodeIndex idx = nodes_.size();
        index_.emplace(node.id, idx);
        nodes_.push_back(std::move(node));
        out_.emplace_back();
        in_.emplace_back();
        return idx;
    }

    void set_seed(NodeIndex i, bool is_seed = true) { nodes_.at(i).is_seed = is_seed; }

    /// Records `weight` forwarding events source -> target. Returns false when
    /// the pair is a self-forward, which only bumps the dropped tally.
    bool add_edge(std::string_view source, std::string_view target, EdgeWeight weight = 1) {
        if (weight == 0) {
            throw Error(ErrorKind::invalid_argument, "edge weight must be positive");
        }
        // Validate both ids before touching the node set.
        const std::string s = require_id(source);
        const std::string t = require_id(target);
        if (s == t) {
            dropped_self_loops_ += weight;
            return false;
        }
        return add_edge(add_node(source), add_node(target), weight);
    }

    bool add_edge(NodeIndex source, NodeIndex target, EdgeWeight weight = 1) {
        if (source >= nodes_.size() || target >= nodes_.size()) {
            throw Error(ErrorKind::invalid_argument, "edge endpoint index out of range");
        }
        if (weight == 0) {
            throw Error(ErrorKind::invalid_argument, "edge weight must be positive");
        }
        if (source == target) {
            dropped_self_loops_ += weight;
            return false;
        }
        auto [it, inserted] = out_[source].try_emplace(target, 0);
        it->second += weight;
        in_[target][source] = it->second;
        if (inserted) {
            ++edge_count_;
        }
        total_weight_ += weight;
        return true;
    }

    std::size_t node_count() const noexcept { return nodes_.size(); }
    /// Distinct ordered pairs.
    std::size_t edge_count() const noexcept { return edge_count_; }
    /// Sum of edge weights, i.e. accepted forwarding events.
    EdgeWeight total_weight() const noexcept { return total_weight_; }
    EdgeWeight dropped_self_loops() const noexcept { return dropped_self_loops_; }

    const ChannelNode& node(NodeIndex i) const { return nodes_.at(i); }
    std::span<const ChannelNode> nodes() const noexcept { return nodes_; }

    std::optional<NodeIndex> find(std::string_view raw_id) const {
        if (auto it = index_.find(normalize_id(raw_id)); it != index_.end()) {
            return it->second;
        }
        return std::nullopt;
    }

    const Adjacency& successors(NodeIndex i) const { return out_.at(i); }
    const Adjacency& predecessors(NodeIndex i) const { return in_.at(i); }

    EdgeWeight weight(NodeIndex source, NodeIndex target) const {
        const auto& adj = out_.at(source);
        const auto it = adj.find(target);
        return it == adj.end() ? 0 : it->second;
    }

    EdgeWeight weight(std::string_view source, std::string_view target) const {
        const auto s = find(source);
        const auto t = find(target);
        return (s && t) ? weight(*s, *t) : 0;
    }

    /// Edges ordered by (source index, target index).
    std::vector<ForwardEdge> edges() const {
        std::vector<ForwardEdge> result;
        result.reserve(edge_count_);
        for (NodeIndex s = 0; s < out_.size(); ++s) {
            for (const auto& [t, w] : out_[s]) {
                result.push_back(ForwardEdge{s, t, w});
            }
        }
        return result;
    }

    /// Distinct neighbours ignoring direction, sorted ascending.
    std::vector<std::vector<NodeIndex>> undirected_neighbors() const {
        std::vector<std::vector<NodeIndex>> result(nodes_.size());
        for (NodeIndex v = 0; v < nodes_.size(); ++v) {
            auto& nb = result[v];
            auto a = out_[v].begin();
            auto b = in_[v].begin();
            while (a != out_[v].end() || b != in_[v].end()) {
                if (b == in_[v].end() || (a != out_[v].end() && a->first < b->first)) {
                    nb.push_back((a++)->first);
                } else if (a == out_[v].end() || b->first < a->first) {
                    nb.push_back((b++)->first);
                } else {
                    nb.push_back(a->first);
                    ++a;
                    ++b;
                }
            }
        }
        return result;
    }

    /// Structural equality: same nodes in the same order and the same weighted edges.
    friend bool operator==(const ForwardGraph& a, const ForwardGraph& b) {
        return a.nodes_ == b.nodes_ && a.out_ == b.out_;
    }

private:
    std::vector<ChannelNode> nodes_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<Adjacency> out_;
    std::vector<Adjacency> in_;
    std::size_t edge_count_ = 0;
    EdgeWeight total_weight_ = 0;
    EdgeWeight dropped_self_loops_ = 0;
};

enum class DensityFormula {
    /// 2|E| / (|V|(|V|-1)): each ordered pair counted as an undirected tie.
    undirected,
    /// |E| / (|V|(|V|-1)), the usual directed density.
    directed,
};

inline double density(std::size_t node_count, std::size_t edge_count,
                      DensityFormula formula = DensityFormula::undirected) {
    if (node_count < 2) {
        throw Error(ErrorKind::undefined_metric, "density needs at least two nodes");
    }
    const double n = static_cast<double>(node_count);
    const double factor = formula == DensityFormula::undirected ? 2.0 : 1.0;
    return factor * static_cast<double>(edge_count) / (n * (n - 1.0));
}

inline double density(const ForwardGraph& g, DensityFormula formula = DensityFormula::undirected) {
    return density(g.node_count(), g.edge_count(), formula);
}

/// Hop-count sum and number of ordered pairs (u, v), u != v, with v reachable from u.
struct ReachableDistances {
    std::uint64_t total_hops = 0;
    std::uint64_t pairs = 0;
};

inline ReachableDistances reachable_distances(const ForwardGraph& g) {
    ReachableDistances acc;
    const std::size_t n = g.node_count();
    std::vector<std::size_t> dist(n);
    std::vector<NodeIndex> frontier;
    frontier.reserve(n);
    constexpr auto unseen = static_cast<std::size_t>(-1);
    for (NodeIndex src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), unseen);
        dist[src] = 0;
        frontier.clear();
        frontier.push_back(src);
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            const NodeIndex u = frontier[head];
            for (const auto& [v, w] : g.successors(u)) {
                if (dist[v] == unseen) {
                    dist[v] = dist[u] + 1;
                    acc.total_hops += dist[v];
                    ++acc.pairs;
                    frontier.push_back(v);
                }
            }
        }
    }
    return acc;
}

/// Mean directed shortest-path length over reachable ordered pairs only.
inline double average_path_length(const ForwardGraph& g) {
    const auto acc = reachable_distances(g);
    if (acc.pairs == 0) {
        throw Error(ErrorKind::undefined_metric, "average path length needs at least one reachable pair");
    }
    return static_cast<double>(acc.total_hops) / static_cast<double>(acc.pairs);
}

} // namespace bridgescore
