#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lowerstar/common.hpp"

namespace lowerstar {

struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected graph with non-negative edge weights. Vertex ids are
// 0..n_vertices-1, edges are stored canonically with u < v and sorted
// lexicographically. Immutable after construction.
class WeightedGraph {
public:
    WeightedGraph() = default;

    WeightedGraph(int n_vertices, std::vector<Edge> edges,
                  std::vector<std::string> labels = {})
        : n_(n_vertices), edges_(std::move(edges)), labels_(std::move(labels)) {
        if (n_ < 0) throw input_error("negative vertex count");
        if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
            throw input_error("label count does not match vertex count");
        for (auto& e : edges_) {
            if (e.u == e.v) throw input_error("self-loop at vertex " + std::to_string(e.u));
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u < 0 || e.v >= n_)
                throw input_error("edge endpoint out of range: (" + std::to_string(e.u) +
                                  "," + std::to_string(e.v) + ")");
            if (!(e.w >= 0.0) || !std::isfinite(e.w))
                throw input_error("edge weight must be finite and >= 0");
        }
        std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
                throw input_error("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                                  std::to_string(edges_[i].v) + ")");
        adjacency_.assign(n_, {});
        for (const auto& e : edges_) {
            adjacency_[e.u].push_back(e.v);
            adjacency_[e.v].push_back(e.u);
        }
        for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
        std::uint64_t h = fnv1a64(&n_, sizeof(n_));
        for (const auto& e : edges_) {
            h = fnv1a64(&e.u, sizeof(e.u), h);
            h = fnv1a64(&e.v, sizeof(e.v), h);
            h = fnv1a64(&e.w, sizeof(e.w), h);
        }
        fingerprint_ = h;
    }

    int n_vertices() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Neighbor ids of v, sorted ascending.
    const std::vector<int>& neighbors(int v) const {
        check_vertex(v);
        return adjacency_[v];
    }

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        const auto& nbrs = adjacency_[u];
        return std::binary_search(nbrs.begin(), nbrs.end(), v);
    }

    // Binds ScalarFields to the graph they were computed on.
    std::uint64_t fingerprint() const { return fingerprint_; }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw input_error("vertex id out of range: " + std::to_string(v));
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> adjacency_;
    std::uint64_t fingerprint_ = 0;
};

// Triangle mesh: vertex positions plus triangle index triples.
struct MeshSpec {
    std::vector<std::array<double, 3>> vertex_positions;
    std::vector<std::array<int, 3>> triangles;
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

// Edge-list text format: one `u v [w]` per line, whitespace-separated, weight
// defaults to 1. `#`-prefixed lines are comments except `#n <N>`, which
// overrides the vertex count (1 + max id otherwise).
inline WeightedGraph parse_edge_list(std::istream& in, const std::string& name = "<edge list>") {
    std::vector<Edge> edges;
    std::string line;
    int line_no = 0;
    int n_override = -1;
    int max_id = -1;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            std::istringstream hs(t.substr(1));
            std::string key;
            hs >> key;
            if (key == "n") {
                long long n;
                if (!(hs >> n) || n < 0)
                    throw input_error(name + ":" + std::to_string(line_no) + ": bad #n header");
                n_override = static_cast<int>(n);
            }
            continue;
        }
        std::istringstream ls(t);
        long long u, v;
        double w = 1.0;
        if (!(ls >> u >> v))
            throw input_error(name + ":" + std::to_string(line_no) + ": malformed edge line");
        std::string rest;
        if (ls >> rest) {
            char* end = nullptr;
            w = std::strtod(rest.c_str(), &end);
            std::string extra;
            if (end == rest.c_str() || *end != '\0' || (ls >> extra))
                throw input_error(name + ":" + std::to_string(line_no) + ": malformed edge line");
        }
        const long long id_cap = std::numeric_limits<int>::max();
        if (u < 0 || v < 0)
            throw input_error(name + ":" + std::to_string(line_no) + ": negative vertex id");
        if (u >= id_cap || v >= id_cap)
            throw input_error(name + ":" + std::to_string(line_no) + ": vertex id too large");
        if (u == v)
            throw input_error(name + ":" + std::to_string(line_no) + ": self-loop");
        if (w < 0.0)
            throw input_error(name + ":" + std::to_string(line_no) + ": negative weight");
        edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
        max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
    }
    int n = n_override >= 0 ? n_override : max_id + 1;
    try {
        return WeightedGraph(n, std::move(edges));
    } catch (const input_error& e) {
        throw input_error(name + ": " + e.what());
    }
}

inline WeightedGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return parse_edge_list(in, path);
}

// Canonical companion of parse_edge_list: `#n` header plus sorted edges.
inline void write_edge_list(const WeightedGraph& g, std::ostream& out) {
    out << "#n " << g.n_vertices() << "\n";
    for (const auto& e : g.edges())
        out << e.u << " " << e.v << " " << format_g17(e.w) << "\n";
}

// ASCII OFF: literal `OFF`, then `nV nF nE`, then nV coordinate lines, then
// nF face lines `3 a b c`. The nE field is ignored.
inline MeshSpec parse_off(std::istream& in, const std::string& name = "<off>") {
    auto next_token = [&](std::string& tok) {
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return true;
        }
        return false;
    };
    std::string tok;
    if (!next_token(tok) || tok != "OFF") throw input_error(name + ": missing OFF header");
    long long nv, nf, ne;
    if (!(in >> nv >> nf >> ne) || nv < 0 || nf < 0)
        throw input_error(name + ": unparsable OFF counts");
    MeshSpec mesh;
    mesh.vertex_positions.resize(nv);
    for (long long i = 0; i < nv; ++i) {
        auto& p = mesh.vertex_positions[i];
        if (!(in >> p[0] >> p[1] >> p[2]))
            throw input_error(name + ": bad coordinate line " + std::to_string(i));
    }
    mesh.triangles.resize(nf);
    for (long long i = 0; i < nf; ++i) {
        long long k;
        if (!(in >> k)) throw input_error(name + ": bad face line " + std::to_string(i));
        if (k != 3) throw input_error(name + ": non-triangle face (" + std::to_string(k) +
                                      " vertices) at face " + std::to_string(i));
        auto& t = mesh.triangles[i];
        long long a, b, c;
        if (!(in >> a >> b >> c)) throw input_error(name + ": bad face line " + std::to_string(i));
        if (a < 0 || a >= nv || b < 0 || b >= nv || c < 0 || c >= nv)
            throw input_error(name + ": face index out of range at face " + std::to_string(i));
        if (a == b || b == c || a == c)
            throw input_error(name + ": degenerate face at face " + std::to_string(i));
        t = {static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)};
    }
    return mesh;
}

// 1-skeleton of a mesh: union of triangle edges, each weighted by the
// Euclidean distance between its endpoint positions.
inline WeightedGraph mesh_graph(const MeshSpec& mesh) {
    std::set<std::pair<int, int>> seen;
    std::vector<Edge> edges;
    auto add = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) return;
        const auto& pa = mesh.vertex_positions[a];
        const auto& pb = mesh.vertex_positions[b];
        double dx = pa[0] - pb[0], dy = pa[1] - pb[1], dz = pa[2] - pb[2];
        edges.push_back({a, b, std::sqrt(dx * dx + dy * dy + dz * dz)});
    };
    for (const auto& t : mesh.triangles) {
        add(t[0], t[1]);
        add(t[1], t[2]);
        add(t[0], t[2]);
    }
    return WeightedGraph(static_cast<int>(mesh.vertex_positions.size()), std::move(edges));
}

inline WeightedGraph load_off_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return mesh_graph(parse_off(in, path));
}

struct EgoNetwork {
    WeightedGraph graph;
    std::vector<int> original_ids;  // new id -> id in the source graph
};

// k-hop ego network of w: the subgraph induced by w and every vertex within
// k BFS hops (edge weights ignored for reachability). New ids follow
// ascending original id.
inline EgoNetwork ego_network(const WeightedGraph& g, int w, int k) {
    g.check_vertex(w);
    if (k < 0) throw input_error("negative hop count");
    std::vector<int> dist(g.n_vertices(), -1);
    std::queue<int> frontier;
    dist[w] = 0;
    frontier.push(w);
    while (!frontier.empty()) {
        int u = frontier.front();
        frontier.pop();
        if (dist[u] == k) continue;
        for (int x : g.neighbors(u))
            if (dist[x] < 0) {
                dist[x] = dist[u] + 1;
                frontier.push(x);
            }
    }
    EgoNetwork ego;
    std::vector<int> new_id(g.n_vertices(), -1);
    for (int v = 0; v < g.n_vertices(); ++v)
        if (dist[v] >= 0) {
            new_id[v] = static_cast<int>(ego.original_ids.size());
            ego.original_ids.push_back(v);
        }
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        if (new_id[e.u] >= 0 && new_id[e.v] >= 0)
            edges.push_back({new_id[e.u], new_id[e.v], e.w});
    std::vector<std::string> labels;
    if (!g.labels().empty())
        for (int v : ego.original_ids) labels.push_back(g.labels()[v]);
    ego.graph = WeightedGraph(static_cast<int>(ego.original_ids.size()), std::move(edges),
                              std::move(labels));
    return ego;
}

// Maximal connected vertex sets; each part sorted, parts ordered by minimum.
inline std::vector<std::vector<int>> connected_components(const WeightedGraph& g) {
    std::vector<std::vector<int>> parts;
    std::vector<char> seen(g.n_vertices(), 0);
    for (int s = 0; s < g.n_vertices(); ++s) {
        if (seen[s]) continue;
        std::vector<int> part;
        std::queue<int> q;
        seen[s] = 1;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            part.push_back(u);
            for (int x : g.neighbors(u))
                if (!seen[x]) {
                    seen[x] = 1;
                    q.push(x);
                }
        }
        std::sort(part.begin(), part.end());
        parts.push_back(std::move(part));
    }
    return parts;
}

}  // namespace lowerstar
