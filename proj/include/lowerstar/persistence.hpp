#pragma once

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lowerstar/common.hpp"
#include "lowerstar/filtration.hpp"
#include "lowerstar/graph.hpp"
#include "lowerstar/scalar_field.hpp"

namespace lowerstar {

// Multiset of finite (birth, death) pairs plus essential births (death = inf).
// Stored sorted, so equality is multiset equality. f_max is the maximum field
// value, recorded for finitization.
struct PersistenceDiagram {
    std::vector<std::pair<double, double>> finite;
    std::vector<double> essential;
    double f_max = 0.0;

    void canonicalize() {
        std::sort(finite.begin(), finite.end());
        std::sort(essential.begin(), essential.end());
    }

    std::size_t total_points() const { return finite.size() + essential.size(); }

    friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

// 0-dimensional persistence of a lower-star filtration by union-find with the
// elder rule: an edge merging two components kills the younger one (tie: the
// component created by the larger vertex id) at the edge's entry time. Each
// vertex creates exactly one class, so finite + essential = |V|. Zero-length
// pairs (b = d) certify tie-breaks and are kept unless drop_zero_length.
inline PersistenceDiagram zero_persistence(const LowerStarFiltration& filt,
                                           bool drop_zero_length = false) {
    const int n = static_cast<int>(filt.vertex_time.size());
    std::vector<int> parent(n, -1);  // -1: not yet entered
    std::vector<std::pair<double, int>> birth(n);  // at roots: (birth time, creator id)

    auto find = [&](int v) {
        int root = v;
        while (parent[root] != root) root = parent[root];
        while (parent[v] != root) {
            int next = parent[v];
            parent[v] = root;
            v = next;
        }
        return root;
    };

    PersistenceDiagram d;
    d.f_max = n > 0 ? *std::max_element(filt.vertex_time.begin(), filt.vertex_time.end()) : 0.0;
    for (const auto& s : filt.simplex_sequence) {
        if (!s.is_edge()) {
            parent[s.u] = s.u;
            birth[s.u] = {s.time, s.u};
            continue;
        }
        int ru = find(s.u), rv = find(s.v);
        if (ru == rv) continue;  // cycle; irrelevant in dimension 0
        if (birth[ru] < birth[rv]) std::swap(ru, rv);  // ru is now the younger
        if (!drop_zero_length || birth[ru].first != s.time)
            d.finite.emplace_back(birth[ru].first, s.time);
        parent[ru] = rv;
    }
    for (int v = 0; v < n; ++v)
        if (find(v) == v) d.essential.push_back(birth[v].first);
    d.canonicalize();
    return d;
}

// Oracle: recomputes sublevel-set components from scratch after every simplex
// insertion (BFS, no union-find) and reads births/deaths off the identifier
// diffs. A component is identified by its minimum (field value, id) vertex,
// which is exactly its oldest vertex in filtration order. Quadratic; capped
// at 1000 vertices.
inline PersistenceDiagram brute_force_zero_persistence(const WeightedGraph& g,
                                                       const ScalarField& f) {
    if (!f.bound_to(g))
        throw input_error("scalar field is not bound to this graph (fingerprint mismatch)");
    if (g.n_vertices() > 1000) throw input_error("brute-force oracle capped at 1000 vertices");

    // Own entry order, independent of the filtration module.
    struct Step {
        double time;
        bool edge;
        int u, v;
    };
    std::vector<Step> steps;
    for (int v = 0; v < g.n_vertices(); ++v) steps.push_back({f[v], false, v, v});
    for (const auto& e : g.edges())
        steps.push_back({std::max(f[e.u], f[e.v]), true, e.u, e.v});
    std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) {
        return std::tuple(a.time, a.edge, a.u, a.v) < std::tuple(b.time, b.edge, b.u, b.v);
    });

    std::vector<char> present(g.n_vertices(), 0);
    std::vector<std::vector<int>> adj(g.n_vertices());
    auto component_ids = [&]() {
        std::vector<std::pair<double, int>> ids;
        std::vector<char> seen(g.n_vertices(), 0);
        for (int s = 0; s < g.n_vertices(); ++s) {
            if (!present[s] || seen[s]) continue;
            std::pair<double, int> best{f[s], s};
            std::queue<int> q;
            seen[s] = 1;
            q.push(s);
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                best = std::min(best, {f[u], u});
                for (int x : adj[u])
                    if (!seen[x]) {
                        seen[x] = 1;
                        q.push(x);
                    }
            }
            ids.push_back(best);
        }
        std::sort(ids.begin(), ids.end());
        return ids;
    };

    PersistenceDiagram d;
    d.f_max = g.n_vertices() > 0 ? f.max_value() : 0.0;
    std::vector<std::pair<double, int>> prev;
    for (const auto& s : steps) {
        if (s.edge) {
            adj[s.u].push_back(s.v);
            adj[s.v].push_back(s.u);
        } else {
            present[s.u] = 1;
        }
        auto cur = component_ids();
        // Identifiers that vanished were merged into an older component.
        for (const auto& id : prev)
            if (!std::binary_search(cur.begin(), cur.end(), id))
                d.finite.emplace_back(id.first, s.time);
        prev = std::move(cur);
    }
    for (const auto& id : prev) d.essential.push_back(id.first);
    d.canonicalize();
    return d;
}

namespace detail {

inline void require_finite(const PersistenceDiagram& d, const char* op) {
    if (!d.essential.empty())
        throw input_error(std::string(op) +
                          " requires finitized diagrams (essential class present)");
}

}  // namespace detail

enum class FinitizePolicy { cap_at_fmax, drop_essential };

inline FinitizePolicy finitize_policy_from_string(const std::string& s) {
    if (s == "cap" || s == "cap_at_fmax") return FinitizePolicy::cap_at_fmax;
    if (s == "drop" || s == "drop_essential") return FinitizePolicy::drop_essential;
    throw input_error("unknown finitize policy: " + s);
}

inline std::string to_string(FinitizePolicy p) {
    return p == FinitizePolicy::cap_at_fmax ? "cap" : "drop";
}

// Removes infinities so metric and vectorization operations apply:
// cap_at_fmax turns each essential birth b into the pair (b, f_max),
// drop_essential discards essential classes. Finite pairs are untouched.
inline PersistenceDiagram finitize(const PersistenceDiagram& d, FinitizePolicy policy) {
    PersistenceDiagram out;
    out.finite = d.finite;
    out.f_max = d.f_max;
    if (policy == FinitizePolicy::cap_at_fmax)
        for (double b : d.essential) out.finite.emplace_back(b, d.f_max);
    out.canonicalize();
    return out;
}

// {"finite": [[b,d],...], "essential": [b,...], "f_max": x}, 17 significant
// digits per value.
inline void write_diagram_json(const PersistenceDiagram& d, std::ostream& out) {
    out << "{\"finite\": [";
    for (std::size_t i = 0; i < d.finite.size(); ++i) {
        if (i) out << ", ";
        out << "[" << format_g17(d.finite[i].first) << ", " << format_g17(d.finite[i].second)
            << "]";
    }
    out << "], \"essential\": [";
    for (std::size_t i = 0; i < d.essential.size(); ++i) {
        if (i) out << ", ";
        out << format_g17(d.essential[i]);
    }
    out << "], \"f_max\": " << format_g17(d.f_max) << "}\n";
}

inline PersistenceDiagram read_diagram_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("diagram JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("finite") || !j.contains("essential") ||
        !j.contains("f_max"))
        throw input_error("diagram JSON: expected finite, essential, f_max");
    PersistenceDiagram d;
    for (const auto& p : j["finite"]) {
        if (!p.is_array() || p.size() != 2) throw input_error("diagram JSON: bad finite pair");
        double b = p[0].get<double>(), dd = p[1].get<double>();
        if (dd < b) throw input_error("diagram JSON: death < birth");
        d.finite.emplace_back(b, dd);
    }
    for (const auto& b : j["essential"]) d.essential.push_back(b.get<double>());
    d.f_max = j["f_max"].get<double>();
    d.canonicalize();
    return d;
}

}  // namespace lowerstar
