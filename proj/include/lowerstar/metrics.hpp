#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lowerstar/common.hpp"
#include "lowerstar/persistence.hpp"

namespace lowerstar {

struct Assignment {
    std::vector<int> col_of_row;
    double total = 0.0;
};

// Exact minimum-cost assignment (Hungarian algorithm with potentials, O(n^3)).
inline Assignment assignment_solve(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    for (const auto& row : cost) {
        if (static_cast<int>(row.size()) != n) throw input_error("cost matrix not square");
        for (double c : row)
            if (!std::isfinite(c)) throw numeric_error("cost matrix entry not finite");
    }
    Assignment a;
    if (n == 0) return a;

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);  // p[j]: row matched to column j
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    a.col_of_row.assign(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j]) a.col_of_row[p[j] - 1] = j - 1;
    for (int i = 0; i < n; ++i) a.total += cost[i][a.col_of_row[i]];
    return a;
}

namespace detail {

inline double linf(std::pair<double, double> a, std::pair<double, double> b) {
    return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

inline std::pair<double, double> diag_proj(std::pair<double, double> p) {
    double m = 0.5 * (p.first + p.second);
    return {m, m};
}

// Augmented L-inf costs: rows are x's points followed by the diagonal
// projections of y's, columns are y's points followed by the projections of
// x's. Diagonal-to-diagonal costs 0, so unmatched points pay only their own
// distance to the diagonal.
inline std::vector<std::vector<double>> augmented_costs(
    const std::vector<std::pair<double, double>>& x,
    const std::vector<std::pair<double, double>>& y) {
    const int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
    const int n = nx + ny;
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i >= nx && j >= ny) continue;  // diagonal-to-diagonal: 0
            auto a = i < nx ? x[i] : diag_proj(y[i - nx]);
            auto b = j < ny ? y[j] : diag_proj(x[j - ny]);
            cost[i][j] = linf(a, b);
        }
    }
    return cost;
}

}  // namespace detail

// q-Wasserstein distance between finite diagrams: optimal matching with L-inf
// ground cost per pair raised to q, diagonal available as a match target.
// Arguments are ordered canonically first, so the result is bitwise symmetric.
inline double wasserstein(const PersistenceDiagram& x, const PersistenceDiagram& y,
                          double q = 2.0) {
    detail::require_finite(x, "wasserstein");
    detail::require_finite(y, "wasserstein");
    if (!(q >= 1.0)) throw input_error("wasserstein order q must be >= 1");
    auto ax = x.finite, ay = y.finite;
    std::sort(ax.begin(), ax.end());
    std::sort(ay.begin(), ay.end());
    if (ay < ax) std::swap(ax, ay);
    if (ax.empty() && ay.empty()) return 0.0;

    auto cost = detail::augmented_costs(ax, ay);
    for (auto& row : cost)
        for (double& c : row) c = q == 2.0 ? c * c : q == 1.0 ? c : std::pow(c, q);
    double total = assignment_solve(cost).total;
    return q == 2.0 ? std::sqrt(total) : q == 1.0 ? total : std::pow(total, 1.0 / q);
}

// Bottleneck distance: min over augmented matchings of the max per-pair L-inf
// cost. Binary search over candidate costs with bipartite matching feasibility.
inline double bottleneck(const PersistenceDiagram& x, const PersistenceDiagram& y) {
    detail::require_finite(x, "bottleneck");
    detail::require_finite(y, "bottleneck");
    auto ax = x.finite, ay = y.finite;
    std::sort(ax.begin(), ax.end());
    std::sort(ay.begin(), ay.end());
    if (ay < ax) std::swap(ax, ay);
    const int n = static_cast<int>(ax.size() + ay.size());
    if (n == 0) return 0.0;

    auto cost = detail::augmented_costs(ax, ay);
    std::vector<double> candidates;
    candidates.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : cost) candidates.insert(candidates.end(), row.begin(), row.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<int> row_of_col(n);
    std::vector<char> visited(n);
    std::function<bool(int, double)> augment = [&](int i, double thr) {
        for (int j = 0; j < n; ++j) {
            if (visited[j] || cost[i][j] > thr) continue;
            visited[j] = 1;
            if (row_of_col[j] < 0 || augment(row_of_col[j], thr)) {
                row_of_col[j] = i;
                return true;
            }
        }
        return false;
    };
    auto feasible = [&](double thr) {
        std::fill(row_of_col.begin(), row_of_col.end(), -1);
        for (int i = 0; i < n; ++i) {
            std::fill(visited.begin(), visited.end(), 0);
            if (!augment(i, thr)) return false;
        }
        return true;
    };

    int lo = 0, hi = static_cast<int>(candidates.size()) - 1;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (feasible(candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

// Symmetric matrix of pairwise distances with row labels.
struct DistanceMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> values;

    int size() const { return static_cast<int>(labels.size()); }

    void validate() const {
        const int n = size();
        if (static_cast<int>(values.size()) != n) throw input_error("distance matrix not square");
        for (const auto& row : values)
            if (static_cast<int>(row.size()) != n) throw input_error("distance matrix not square");
        for (int i = 0; i < n; ++i) {
            if (values[i][i] != 0.0) throw input_error("distance matrix diagonal not zero");
            for (int j = 0; j < n; ++j) {
                if (!(values[i][j] >= 0.0)) throw input_error("distance matrix entry negative");
                if (std::abs(values[i][j] - values[j][i]) > 1e-12)
                    throw input_error("distance matrix not symmetric");
            }
        }
    }
};

inline DistanceMatrix distance_matrix(
    const std::vector<std::pair<std::string, PersistenceDiagram>>& diagrams, double q = 2.0) {
    const int n = static_cast<int>(diagrams.size());
    DistanceMatrix m;
    m.labels.reserve(n);
    for (const auto& [label, d] : diagrams) m.labels.push_back(label);
    m.values.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            m.values[i][j] = m.values[j][i] = wasserstein(diagrams[i].second, diagrams[j].second, q);
    return m;
}

// CSV: header row of labels, then one row per item: label, n values.
inline void write_matrix_csv(const DistanceMatrix& m, std::ostream& out) {
    out << "label";
    for (const auto& l : m.labels) out << "," << l;
    out << "\n";
    for (int i = 0; i < m.size(); ++i) {
        out << m.labels[i];
        for (double v : m.values[i]) out << "," << format_g17(v);
        out << "\n";
    }
}

inline DistanceMatrix read_matrix_csv(std::istream& in) {
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        std::istringstream ss(s);
        while (std::getline(ss, cur, ',')) out.push_back(cur);
        return out;
    };
    std::string line;
    if (!std::getline(in, line)) throw input_error("distance matrix CSV: empty input");
    auto header = split(detail::trim(line));
    if (header.empty() || header[0] != "label")
        throw input_error("distance matrix CSV: missing label header");
    DistanceMatrix m;
    m.labels.assign(header.begin() + 1, header.end());
    const int n = m.size();
    while (std::getline(in, line)) {
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        auto cells = split(t);
        if (static_cast<int>(cells.size()) != n + 1)
            throw input_error("distance matrix CSV: wrong column count");
        std::vector<double> row;
        row.reserve(n);
        for (int j = 1; j <= n; ++j) row.push_back(std::stod(cells[j]));
        m.values.push_back(std::move(row));
    }
    if (static_cast<int>(m.values.size()) != n)
        throw input_error("distance matrix CSV: wrong row count");
    m.validate();
    return m;
}

}  // namespace lowerstar
