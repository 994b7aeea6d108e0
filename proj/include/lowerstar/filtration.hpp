#pragma once

#include <algorithm>
#include <ostream>
#include <tuple>
#include <vector>

#include "lowerstar/common.hpp"
#include "lowerstar/graph.hpp"
#include "lowerstar/scalar_field.hpp"

namespace lowerstar {

// A vertex (v >= 0, u == v) or an edge (u < v) with its entry time.
struct FiltrationSimplex {
    double time;
    int u;
    int v;

    bool is_edge() const { return u != v; }

    friend bool operator==(const FiltrationSimplex&, const FiltrationSimplex&) = default;
};

// Lower-star filtration of a graph under a vertex scalar field: a vertex
// enters at its field value, an edge at the max of its endpoints. The
// simplex sequence is a total order refining entry times; ties are resolved
// vertices-first, then by id / lexicographic endpoints, so the filtration is
// deterministic even when field values collide.
struct LowerStarFiltration {
    std::vector<int> vertex_order;        // vertex ids sorted by (field value, id)
    std::vector<double> vertex_time;      // per vertex id
    std::vector<double> edge_time;        // aligned with graph.edges()
    std::vector<FiltrationSimplex> simplex_sequence;
};

inline LowerStarFiltration lower_star(const WeightedGraph& g, const ScalarField& f) {
    if (!f.bound_to(g))
        throw input_error("scalar field is not bound to this graph (fingerprint mismatch)");
    LowerStarFiltration filt;
    filt.vertex_time = f.values();
    filt.vertex_order.resize(g.n_vertices());
    for (int v = 0; v < g.n_vertices(); ++v) filt.vertex_order[v] = v;
    std::sort(filt.vertex_order.begin(), filt.vertex_order.end(),
              [&](int a, int b) { return std::pair(f[a], a) < std::pair(f[b], b); });

    filt.edge_time.reserve(g.edges().size());
    filt.simplex_sequence.reserve(g.n_vertices() + g.edges().size());
    for (int v : filt.vertex_order) filt.simplex_sequence.push_back({f[v], v, v});
    for (const auto& e : g.edges()) {
        double t = std::max(f[e.u], f[e.v]);
        filt.edge_time.push_back(t);
        filt.simplex_sequence.push_back({t, e.u, e.v});
    }
    std::stable_sort(filt.simplex_sequence.begin(), filt.simplex_sequence.end(),
                     [](const FiltrationSimplex& a, const FiltrationSimplex& b) {
                         return std::tuple(a.time, a.is_edge(), a.u, a.v) <
                                std::tuple(b.time, b.is_edge(), b.u, b.v);
                     });
    return filt;
}

// Debug dump: one line per simplex, `V i t` or `E i j t`, in filtration order.
inline void dump_filtration(const LowerStarFiltration& filt, std::ostream& out) {
    for (const auto& s : filt.simplex_sequence) {
        if (s.is_edge())
            out << "E " << s.u << " " << s.v << " " << format_g17(s.time) << "\n";
        else
            out << "V " << s.u << " " << format_g17(s.time) << "\n";
    }
}

}  // namespace lowerstar
