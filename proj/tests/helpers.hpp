// Shared test utilities: deterministic graph/field/diagram generators and
// independent brute-force oracles. Everything here stays independent of the
// implementation paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "lowerstar/graph.hpp"
#include "lowerstar/persistence.hpp"
#include "lowerstar/scalar_field.hpp"

namespace testutil {

using lowerstar::Edge;
using lowerstar::PersistenceDiagram;
using lowerstar::ScalarField;
using lowerstar::SplitMix64;
using lowerstar::WeightedGraph;

inline WeightedGraph path_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
    return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph cycle_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
    if (n > 2) edges.push_back({0, n - 1, 1.0});
    return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
    return WeightedGraph(n, std::move(edges));
}

// Vertex 0 is the center; leaves are 1..n_leaves.
inline WeightedGraph star_graph(int n_leaves) {
    std::vector<Edge> edges;
    for (int i = 1; i <= n_leaves; ++i) edges.push_back({0, i, 1.0});
    return WeightedGraph(n_leaves + 1, std::move(edges));
}

inline WeightedGraph grid_graph(int rows, int cols) {
    std::vector<Edge> edges;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
            if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
        }
    return WeightedGraph(rows * cols, std::move(edges));
}

// Erdos-Renyi style: each pair independently with probability edge_prob.
inline WeightedGraph random_graph(SplitMix64& rng, int n, double edge_prob) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.unit() < edge_prob) edges.push_back({u, v, 1.0});
    return WeightedGraph(n, std::move(edges));
}

// Random attachment tree: vertex i > 0 attaches to a uniform earlier vertex.
inline WeightedGraph random_tree(SplitMix64& rng, int n, double weight_lo = 1.0,
                                 double weight_hi = 1.0) {
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng.below(v));
        double w = weight_lo + (weight_hi - weight_lo) * rng.unit();
        edges.push_back({u, v, w});
    }
    return WeightedGraph(n, std::move(edges));
}

inline ScalarField random_field(SplitMix64& rng, const WeightedGraph& g, double lo = 0.0,
                                double hi = 1.0) {
    std::vector<double> values(g.n_vertices());
    for (double& x : values) x = lo + (hi - lo) * rng.unit();
    return ScalarField(g, values);
}

inline PersistenceDiagram random_diagram(SplitMix64& rng, int max_points, double scale = 2.0) {
    PersistenceDiagram d;
    int k = static_cast<int>(rng.below(max_points + 1));
    double max_death = 0.0;
    for (int i = 0; i < k; ++i) {
        double b = rng.unit() * scale;
        double death = b + rng.unit() * scale;
        d.finite.emplace_back(b, death);
        max_death = std::max(max_death, death);
    }
    d.f_max = max_death;
    d.canonicalize();
    return d;
}

// Minimum assignment total by full permutation enumeration. n <= 8 or so.
inline double assignment_oracle(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return 0.0;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += cost[i][perm[i]];
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// q-Wasserstein by exhaustive matching enumeration (branch and bound over
// augmented bijections). Independent of the Hungarian solver.
inline double wasserstein_oracle(const PersistenceDiagram& x, const PersistenceDiagram& y,
                                 double q) {
    auto proj = [](std::pair<double, double> p) {
        double m = 0.5 * (p.first + p.second);
        return std::pair(m, m);
    };
    std::vector<std::pair<double, double>> rows = x.finite, cols = y.finite;
    const std::size_t nx = rows.size(), ny = cols.size();
    for (const auto& p : y.finite) rows.push_back(proj(p));
    for (const auto& p : x.finite) cols.push_back(proj(p));
    const std::size_t n = rows.size();
    if (n == 0) return 0.0;
    auto cost = [&](std::size_t i, std::size_t j) {
        if (i >= nx && j >= ny) return 0.0;
        double c = std::max(std::abs(rows[i].first - cols[j].first),
                            std::abs(rows[i].second - cols[j].second));
        return std::pow(c, q);
    };
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) best += cost(i, i);  // initial upper bound
    std::vector<char> used(n, 0);
    std::function<void(std::size_t, double)> go = [&](std::size_t i, double acc) {
        if (acc >= best) return;
        if (i == n) {
            best = acc;
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            go(i + 1, acc + cost(i, j));
            used[j] = 0;
        }
    };
    go(0, 0.0);
    return std::pow(best, 1.0 / q);
}

}  // namespace testutil
