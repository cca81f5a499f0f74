#pragma once

// Slow reference computations used only by tests. They work on dense matrices
// built straight from a fixture's raw edge list, not on ForwardGraph.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "support/fixtures.hpp"

namespace oracles {

using Matrix = std::vector<std::vector<int>>;

/// 0/1 adjacency; repeated events collapse.
inline Matrix adjacency(const fixtures::EdgeSet& es) {
    Matrix a(es.nodes, std::vector<int>(es.nodes, 0));
    for (const auto& [u, v] : es.edges) a[u][v] = 1;
    return a;
}

/// Weighted adjacency counting repeated events.
inline std::vector<std::vector<double>> weighted(const fixtures::EdgeSet& es) {
    std::vector<std::vector<double>> a(es.nodes, std::vector<double>(es.nodes, 0.0));
    for (const auto& [u, v] : es.edges) a[u][v] += 1.0;
    return a;
}

inline std::size_t edge_count(const Matrix& a) {
    std::size_t e = 0;
    for (const auto& row : a)
        for (int x : row) e += static_cast<std::size_t>(x);
    return e;
}

inline std::vector<std::uint64_t> column_sums(const Matrix& a) {
    std::vector<std::uint64_t> s(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) s[j] += static_cast<std::uint64_t>(a[i][j]);
    return s;
}

/// Triangle counting by enumerating every neighbour pair of the undirected projection.
inline std::vector<double> clustering(const Matrix& a) {
    const std::size_t n = a.size();
    const auto linked = [&](std::size_t i, std::size_t j) { return a[i][j] != 0 || a[j][i] != 0; };
    std::vector<double> c(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> nb;
        for (std::size_t u = 0; u < n; ++u)
            if (u != v && linked(u, v)) nb.push_back(u);
        const double k = static_cast<double>(nb.size());
        if (nb.size() < 2) continue;
        double t = 0;
        for (std::size_t x = 0; x < nb.size(); ++x)
            for (std::size_t y = x + 1; y < nb.size(); ++y)
                if (linked(nb[x], nb[y])) t += 1;
        c[v] = 2.0 * t / (k * (k - 1.0));
    }
    return c;
}

/// Dense (1 - t) A^T + t/n J.
inline std::vector<std::vector<double>> centrality_matrix(const Matrix& a, double teleport) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            b[i][j] = (1.0 - teleport) * a[j][i] + teleport / static_cast<double>(n);
    return b;
}

/// Repeated dense multiplication until successive L2-normalized iterates agree to `tol`.
inline std::vector<double> dense_power_method(const Matrix& a, double teleport, double tol = 1e-12,
                                              int max_iter = 200000) {
    const auto b = centrality_matrix(a, teleport);
    const std::size_t n = a.size();
    std::vector<double> x(n, 1.0), y(n);
    for (int it = 0; it < max_iter; ++it) {
        double norm = 0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = 0;
            for (std::size_t j = 0; j < n; ++j) y[i] += b[i][j] * x[j];
            norm += y[i] * y[i];
        }
        norm = std::sqrt(norm);
        double diff = 0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= norm;
            diff = std::max(diff, std::abs(y[i] - x[i]));
        }
        x.swap(y);
        if (diff < tol) break;
    }
    return x;
}

/// Perron vector of the centrality matrix from a full eigen-decomposition.
inline std::vector<double> eigen_dominant(const Matrix& a, double teleport) {
    const auto b = centrality_matrix(a, teleport);
    const auto n = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < n; ++i)
        if (solver.eigenvalues()[i].real() > solver.eigenvalues()[best].real()) best = i;
    Eigen::VectorXd v = solver.eigenvectors().col(best).real();
    v /= v.norm();
    if (v.sum() < 0) v = -v;
    return std::vector<double>(v.data(), v.data() + v.size());
}

/// Floyd-Warshall mean over reachable ordered pairs; NaN when none.
inline double average_path_length(const Matrix& a) {
    const std::size_t n = a.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (a[i][j]) d[i][j] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    double sum = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && d[i][j] < inf) {
                sum += d[i][j];
                ++pairs;
            }
    return pairs == 0 ? std::nan("") : sum / static_cast<double>(pairs);
}

/// Modularity by the textbook double sum over node pairs.
inline double modularity(const std::vector<std::vector<double>>& directed_weights,
                         const std::vector<std::size_t>& community, double resolution) {
    const std::size_t n = directed_weights.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) a[i][j] = directed_weights[i][j] + directed_weights[j][i];
    std::vector<double> k(n, 0.0);
    double two_m = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            k[i] += a[i][j];
            two_m += a[i][j];
        }
    double q = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (community[i] == community[j]) q += a[i][j] - resolution * k[i] * k[j] / two_m;
    return q / two_m;
}

struct ExhaustiveOptimum {
    double modularity = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> partition;
    std::size_t partitions_visited = 0;
};

/// Enumerates every set partition (restricted growth strings) and keeps the best.
inline ExhaustiveOptimum exhaustive_modularity(const std::vector<std::vector<double>>& directed_weights,
                                               double resolution) {
    const std::size_t n = directed_weights.size();
    ExhaustiveOptimum best;
    std::vector<std::size_t> rgs(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t used) {
        if (pos == n) {
            ++best.partitions_visited;
            const double q = modularity(directed_weights, rgs, resolution);
            if (q > best.modularity + 1e-12) {
                best.modularity = q;
                best.partition = rgs;
            }
            return;
        }
        for (std::size_t c = 0; c <= used && c < n; ++c) {
            rgs[pos] = c;
            rec(pos + 1, std::max(used, c + 1));
        }
    };
    if (n > 0) {
        rgs[0] = 0;
        rec(1, 1);
    }
    return best;
}

/// True when two labelings induce the same grouping.
inline bool same_grouping(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    return true;
}

} // namespace oracles
