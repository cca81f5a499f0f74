#pragma once

// Graph generators shared by the unit and acceptance suites. Each fixture keeps
// its raw edge list so oracles can work from it without going through
// ForwardGraph.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bridgescore/graph.hpp"

namespace fixtures {

struct EdgeSet {
    std::size_t nodes = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges; // may repeat; never self-loops
};

inline std::string node_name(std::size_t i) {
    std::string s = std::to_string(i);
    return "n" + std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
}

inline bridgescore::ForwardGraph build(const EdgeSet& es) {
    bridgescore::ForwardGraph g;
    for (std::size_t i = 0; i < es.nodes; ++i) {
        g.add_node(node_name(i));
    }
    for (const auto& [u, v] : es.edges) {
        g.add_edge(u, v);
    }
    return g;
}

/// Edges as sorted (source id, target id, weight); independent of node insertion order.
inline std::vector<std::tuple<std::string, std::string, std::uint64_t>> labelled_edges(const bridgescore::ForwardGraph& g) {
    std::vector<std::tuple<std::string, std::string, std::uint64_t>> out;
    for (const auto& e : g.edges()) out.emplace_back(g.node(e.source).id, g.node(e.target).id, e.weight);
    std::sort(out.begin(), out.end());
    return out;
}

/// Each ordered pair present independently with probability p; some pairs repeated.
inline EdgeSet random_digraph(std::size_t n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::bernoulli_distribution repeat(0.2);
    EdgeSet es{n, {}};
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u != v && coin(rng)) {
                es.edges.emplace_back(u, v);
                if (repeat(rng)) {
                    es.edges.emplace_back(u, v);
                }
            }
        }
    }
    return es;
}

/// Directed preferential attachment: each new node forwards from `m` distinct
/// existing nodes chosen with probability proportional to (degree + 1), and one
/// of those targets sometimes forwards back.
inline EdgeSet preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    EdgeSet es{n, {}};
    std::vector<std::size_t> pool; // node repeated once per (degree + 1)
    const std::size_t core = m + 1;
    for (std::size_t u = 0; u < core; ++u) {
        for (std::size_t v = 0; v < core; ++v) {
            if (u < v) {
                es.edges.emplace_back(u, v);
            }
        }
    }
    for (std::size_t u = 0; u < core; ++u) {
        for (std::size_t r = 0; r < core; ++r) {
            pool.push_back(u);
        }
    }
    std::bernoulli_distribution back(0.3);
    for (std::size_t v = core; v < n; ++v) {
        std::vector<std::size_t> chosen;
        while (chosen.size() < m) {
            std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
            const std::size_t t = pool[pick(rng)];
            if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
                chosen.push_back(t);
            }
        }
        for (const std::size_t t : chosen) {
            es.edges.emplace_back(v, t);
            pool.push_back(t);
            if (back(rng)) {
                es.edges.emplace_back(t, v);
            }
        }
        pool.push_back(v);
        for (std::size_t r = 0; r < m; ++r) {
            pool.push_back(v);
        }
    }
    return es;
}

/// Two cliques of `size` nodes (edges i->j for i<j) joined by one edge between node 0 and node `size`.
inline EdgeSet two_cliques_bridge_edge(std::size_t size) {
    EdgeSet es{2 * size, {}};
    for (std::size_t base : {std::size_t{0}, size}) {
        for (std::size_t i = 0; i < size; ++i) {
            for (std::size_t j = i + 1; j < size; ++j) {
                es.edges.emplace_back(base + i, base + j);
            }
        }
    }
    es.edges.emplace_back(0, size);
    return es;
}

/// Two cliques of `size` nodes plus a bridge node (index 2*size) with clique0[0] -> bridge -> clique1[0].
inline EdgeSet two_cliques_bridge_node(std::size_t size) {
    EdgeSet es{2 * size + 1, {}};
    for (std::size_t base : {std::size_t{0}, size}) {
        for (std::size_t i = 0; i < size; ++i) {
            for (std::size_t j = i + 1; j < size; ++j) {
                es.edges.emplace_back(base + i, base + j);
            }
        }
    }
    es.edges.emplace_back(0, 2 * size);
    es.edges.emplace_back(2 * size, size);
    return es;
}

inline EdgeSet disjoint_triangles(std::size_t count) {
    EdgeSet es{3 * count, {}};
    for (std::size_t t = 0; t < count; ++t) {
        es.edges.emplace_back(3 * t, 3 * t + 1);
        es.edges.emplace_back(3 * t + 1, 3 * t + 2);
        es.edges.emplace_back(3 * t + 2, 3 * t);
    }
    return es;
}

inline EdgeSet directed_cycle(std::size_t n) {
    EdgeSet es{n, {}};
    for (std::size_t i = 0; i < n; ++i) {
        es.edges.emplace_back(i, (i + 1) % n);
    }
    return es;
}

/// Leaves 1..leaves all forward into node 0.
inline EdgeSet in_star(std::size_t leaves) {
    EdgeSet es{leaves + 1, {}};
    for (std::size_t i = 1; i <= leaves; ++i) {
        es.edges.emplace_back(i, 0);
    }
    return es;
}

/// Random strongly connected digraph: a Hamiltonian cycle plus random chords.
inline EdgeSet strongly_connected(std::size_t n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    EdgeSet es{n, {}};
    for (std::size_t i = 0; i < n; ++i) {
        es.edges.emplace_back(perm[i], perm[(i + 1) % n]);
    }
    std::bernoulli_distribution coin(p);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u != v && coin(rng)) es.edges.emplace_back(u, v);
        }
    }
    return es;
}

/// Graph with awkward labels (markup characters, '@' prefixes, non-ASCII),
/// edge weights above 1, isolated nodes and a few seed flags.
inline bridgescore::ForwardGraph labelled_random_graph(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    bridgescore::ForwardGraph g;
    const std::size_t n = 2 + rng() % 40;
    const char* stems[] = {"Chan", "@News", "a&b", "<x>", "q\"t", "\xd0\x98\xd0\xb2\xd0\xb0\xd0\xbd", "tab"};
    for (std::size_t i = 0; i < n; ++i) {
        g.add_node(std::string(stems[rng() % 7]) + "_" + std::to_string(i), rng() % 5 == 0);
    }
    const std::size_t m = rng() % (3 * n);
    for (std::size_t e = 0; e < m; ++e) {
        const std::size_t u = rng() % n, v = rng() % n;
        if (u != v) g.add_edge(u, v, 1 + rng() % 9);
    }
    return g;
}

} // namespace fixtures
