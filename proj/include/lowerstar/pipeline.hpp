#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lowerstar/common.hpp"
#include "lowerstar/encoders.hpp"
#include "lowerstar/filtration.hpp"
#include "lowerstar/graph.hpp"
#include "lowerstar/metrics.hpp"
#include "lowerstar/persistence.hpp"
#include "lowerstar/scalar_field.hpp"

namespace lowerstar {

// A full experiment: labeled graph inputs, one encoder, Wasserstein order,
// finitization policy, seeds, output directory.
struct ExperimentSpec {
    std::vector<std::pair<std::string, std::string>> inputs;  // (label, path)
    EncoderKind encoder = EncoderKind::degree;
    WalkConfig walk;
    int k = 1;                  // ego hops, node-level descriptors only
    double wasserstein_q = 2.0;
    FinitizePolicy finitize_policy = FinitizePolicy::cap_at_fmax;
    std::vector<std::uint64_t> seeds{1};
    std::string outdir = "out";

    void validate() const {
        if (inputs.empty()) throw input_error("experiment spec has no inputs");
        if (seeds.empty()) throw input_error("experiment spec has no seeds");
        if (k < 0) throw input_error("ego hop count must be >= 0");
        if (!(wasserstein_q >= 1.0)) throw input_error("wasserstein_q must be >= 1");
        walk.validate();
    }

    // Canonical key-value serialization of the experiment content; hashed
    // into the run manifest. outdir is excluded: where artifacts land is not
    // part of the experiment identity.
    std::string canonical_string() const {
        std::ostringstream out;
        for (const auto& [label, path] : inputs) out << "input " << label << " " << path << "\n";
        out << "encoder " << to_string(encoder) << "\n"
            << "walks_per_node " << walk.walks_per_node << "\n"
            << "walk_length " << walk.walk_length << "\n"
            << "window " << walk.window << "\n"
            << "negatives " << walk.negatives << "\n"
            << "epochs " << walk.epochs << "\n"
            << "learning_rate " << format_g17(walk.learning_rate) << "\n"
            << "p " << format_g17(walk.p) << "\n"
            << "q " << format_g17(walk.q) << "\n"
            << "diffusion_size " << walk.diffusion_size << "\n"
            << "k " << k << "\n"
            << "wasserstein_q " << format_g17(wasserstein_q) << "\n"
            << "finitize " << to_string(finitize_policy) << "\n";
        for (auto s : seeds) out << "seed " << s << "\n";
        return out.str();
    }
};

// Flat key-value spec file. Keys mirror ExperimentSpec: repeated
// `input <label> <path>` and `seed <s>` lines, plus `encoder`, the walk
// config fields (`p`/`q` are the node2vec parameters), `k`, `wasserstein_q`,
// `finitize` (cap|drop) and `outdir`. `#` starts a comment.
inline ExperimentSpec parse_spec_file(std::istream& in, const std::string& name = "<spec>") {
    ExperimentSpec spec;
    spec.seeds.clear();
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& msg) {
        throw input_error(name + ":" + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ls(t);
        std::string key;
        ls >> key;
        try {
            if (key == "input") {
                std::string label, path;
                if (!(ls >> label >> path)) fail("expected: input <label> <path>");
                spec.inputs.emplace_back(label, path);
            } else if (key == "encoder") {
                std::string v;
                ls >> v;
                spec.encoder = encoder_kind_from_string(v);
            } else if (key == "walks_per_node") {
                ls >> spec.walk.walks_per_node;
            } else if (key == "walk_length") {
                ls >> spec.walk.walk_length;
            } else if (key == "window") {
                ls >> spec.walk.window;
            } else if (key == "negatives") {
                ls >> spec.walk.negatives;
            } else if (key == "epochs") {
                ls >> spec.walk.epochs;
            } else if (key == "learning_rate") {
                ls >> spec.walk.learning_rate;
            } else if (key == "p") {
                ls >> spec.walk.p;
            } else if (key == "q") {
                ls >> spec.walk.q;
            } else if (key == "diffusion_size") {
                ls >> spec.walk.diffusion_size;
            } else if (key == "k") {
                ls >> spec.k;
            } else if (key == "wasserstein_q") {
                ls >> spec.wasserstein_q;
            } else if (key == "finitize") {
                std::string v;
                ls >> v;
                spec.finitize_policy = finitize_policy_from_string(v);
            } else if (key == "seed") {
                std::uint64_t s;
                if (!(ls >> s)) fail("expected: seed <integer>");
                spec.seeds.push_back(s);
            } else if (key == "outdir") {
                ls >> spec.outdir;
            } else {
                fail("unknown key: " + key);
            }
        } catch (const input_error&) {
            throw;
        }
        if (ls.fail()) fail("bad value for key: " + key);
        std::string trailing;
        if ((ls >> trailing) && trailing[0] != '#')
            fail("unexpected trailing token: " + trailing);
    }
    if (spec.seeds.empty()) spec.seeds.push_back(1);
    spec.validate();
    return spec;
}

inline ExperimentSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return parse_spec_file(in, path);
}

// Loads a graph by extension: .off meshes, anything else as an edge list.
inline WeightedGraph load_graph_auto(const std::string& path) {
    auto ext = std::filesystem::path(path).extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(c));
    return ext == ".off" ? load_off_mesh(path) : load_edge_list(path);
}

// Graph-level descriptor: encoder -> field -> lower-star -> 0-persistence ->
// finitize. Fully determined by (g, spec, seed).
inline PersistenceDiagram graph_descriptor(const WeightedGraph& g, const ExperimentSpec& spec,
                                           std::uint64_t seed) {
    WalkConfig cfg = spec.walk;
    cfg.seed = seed;
    ScalarField field = encode(g, spec.encoder, cfg);
    return finitize(zero_persistence(lower_star(g, field)), spec.finitize_policy);
}

// Node-level descriptor: a graph-level field restricted to the k-hop ego
// network of w, then the same filtration -> persistence -> finitize chain.
inline PersistenceDiagram node_descriptor(const WeightedGraph& g, int w, int k,
                                          const ScalarField& field, FinitizePolicy policy) {
    g.check_vertex(w);
    if (!field.bound_to(g))
        throw input_error("scalar field is not bound to this graph (fingerprint mismatch)");
    EgoNetwork ego = ego_network(g, w, k);
    std::vector<double> restricted;
    restricted.reserve(ego.original_ids.size());
    for (int orig : ego.original_ids) restricted.push_back(field[orig]);
    ScalarField ego_field(ego.graph, std::move(restricted));
    return finitize(zero_persistence(lower_star(ego.graph, ego_field)), policy);
}

inline PersistenceDiagram node_descriptor(const WeightedGraph& g, int w,
                                          const ExperimentSpec& spec, std::uint64_t seed) {
    WalkConfig cfg = spec.walk;
    cfg.seed = seed;
    return node_descriptor(g, w, spec.k, encode(g, spec.encoder, cfg), spec.finitize_policy);
}

// Pairwise statistics over per-seed runs: Wasserstein distances between the
// descriptors, and sup-norm distances between the raw fields for contrast.
struct StabilityStats {
    int runs = 0;
    double mean_wasserstein = 0.0;
    double max_wasserstein = 0.0;
    double mean_field_sup = 0.0;
    double max_field_sup = 0.0;
};

inline StabilityStats stability_experiment(const WeightedGraph& g, const ExperimentSpec& spec) {
    if (spec.seeds.size() < 2) throw input_error("stability experiment needs >= 2 seeds");
    std::vector<ScalarField> fields;
    std::vector<PersistenceDiagram> diagrams;
    for (auto seed : spec.seeds) {
        WalkConfig cfg = spec.walk;
        cfg.seed = seed;
        fields.push_back(encode(g, spec.encoder, cfg));
        diagrams.push_back(
            finitize(zero_persistence(lower_star(g, fields.back())), spec.finitize_policy));
    }
    StabilityStats stats;
    stats.runs = static_cast<int>(spec.seeds.size());
    int pairs = 0;
    for (std::size_t i = 0; i < diagrams.size(); ++i) {
        for (std::size_t j = i + 1; j < diagrams.size(); ++j) {
            double w = wasserstein(diagrams[i], diagrams[j], spec.wasserstein_q);
            double sup = 0.0;
            for (int v = 0; v < g.n_vertices(); ++v)
                sup = std::max(sup, std::abs(fields[i][v] - fields[j][v]));
            stats.mean_wasserstein += w;
            stats.max_wasserstein = std::max(stats.max_wasserstein, w);
            stats.mean_field_sup += sup;
            stats.max_field_sup = std::max(stats.max_field_sup, sup);
            ++pairs;
        }
    }
    stats.mean_wasserstein /= pairs;
    stats.mean_field_sup /= pairs;
    return stats;
}

// Classical MDS: double-center the entrywise-squared distances, extract the
// top eigenpairs by power iteration with deflation (fixed start vector,
// tolerance 1e-10, at most 10000 iterations), clamp negative eigenvalues to
// 0, scale eigenvectors by sqrt(eigenvalue).
inline std::vector<std::vector<double>> mds_project(const DistanceMatrix& m, int dim = 2) {
    m.validate();
    const int n = m.size();
    std::vector<std::vector<double>> coords(n, std::vector<double>(dim, 0.0));
    if (n == 0) return coords;

    std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
    std::vector<double> row_mean(n, 0.0);
    double total_mean = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double s = m.values[i][j] * m.values[i][j];
            b[i][j] = s;
            row_mean[i] += s / n;
            total_mean += s / (static_cast<double>(n) * n);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b[i][j] = -0.5 * (b[i][j] - row_mean[i] - row_mean[j] + total_mean);

    auto mat_vec = [&](const std::vector<double>& v) {
        std::vector<double> out(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[i] += b[i][j] * v[j];
        return out;
    };
    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    };

    for (int c = 0; c < dim; ++c) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = static_cast<double>(i + 1);
        double nv = norm(v);
        for (double& x : v) x /= nv;

        for (int iter = 0; iter < 10000; ++iter) {
            auto w = mat_vec(v);
            double nw = norm(w);
            if (nw < 1e-300) break;  // vector in the kernel; component is zero
            for (double& x : w) x /= nw;
            int pivot = 0;
            for (int i = 1; i < n; ++i)
                if (std::abs(w[i]) > std::abs(w[pivot])) pivot = i;
            if (w[pivot] < 0.0)
                for (double& x : w) x = -x;
            double delta = 0.0;
            for (int i = 0; i < n; ++i) delta = std::max(delta, std::abs(w[i] - v[i]));
            v = std::move(w);
            if (delta < 1e-10) break;
        }
        auto bv = mat_vec(v);
        double eigenvalue = 0.0;
        for (int i = 0; i < n; ++i) eigenvalue += v[i] * bv[i];
        double scale = std::sqrt(std::max(0.0, eigenvalue));
        for (int i = 0; i < n; ++i) coords[i][c] = v[i] * scale;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b[i][j] -= eigenvalue * v[i] * v[j];
    }
    return coords;
}

// Projection CSV: label,x,y.
inline void write_projection_csv(const DistanceMatrix& m,
                                 const std::vector<std::vector<double>>& coords,
                                 std::ostream& out) {
    out << "label";
    if (!coords.empty())
        for (std::size_t c = 0; c < coords[0].size(); ++c) out << ",x" << c;
    out << "\n";
    for (int i = 0; i < m.size(); ++i) {
        out << m.labels[i];
        for (double x : coords[i]) out << "," << format_g17(x);
        out << "\n";
    }
}

struct RunResult {
    std::map<std::string, std::string> output_checksums;  // path relative to outdir -> hash
    std::map<std::string, std::string> failures;          // input label -> message
    std::string spec_hash;
    std::string manifest_path;
};

namespace detail {

inline std::string file_checksum(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read back " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return hash_hex(fnv1a64(buf.str()));
}

}  // namespace detail

// Full graph-level pipeline over all inputs: per-input diagram JSONs, the
// Wasserstein distance matrix, its 2-d projection, a stats summary, and a
// manifest recording the spec hash and per-file checksums. Descriptor RNG is
// derived from (first seed, input index). Per-input failures are recorded in
// the manifest and the run continues.
inline RunResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    namespace fs = std::filesystem;
    fs::path outdir(spec.outdir);
    fs::create_directories(outdir / "diagrams");

    RunResult result;
    result.spec_hash = hash_hex(fnv1a64(spec.canonical_string()));

    auto write_output = [&](const fs::path& rel, auto&& writer) {
        fs::path path = outdir / rel;
        {
            std::ofstream out(path);
            if (!out) throw input_error("cannot write " + path.string());
            writer(out);
        }
        result.output_checksums[rel.generic_string()] = detail::file_checksum(path);
    };

    std::vector<std::pair<std::string, PersistenceDiagram>> diagrams;
    std::vector<std::tuple<std::string, int, int>> input_summaries;  // label, |V|, |E|
    for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
        const auto& [label, path] = spec.inputs[i];
        try {
            WeightedGraph g = load_graph_auto(path);
            PersistenceDiagram d =
                graph_descriptor(g, spec, derive_seed(spec.seeds[0], i));
            write_output(fs::path("diagrams") / (label + ".json"),
                         [&](std::ostream& out) { write_diagram_json(d, out); });
            input_summaries.emplace_back(label, g.n_vertices(),
                                         static_cast<int>(g.edges().size()));
            diagrams.emplace_back(label, std::move(d));
        } catch (const std::exception& e) {
            result.failures[label] = e.what();
        }
    }

    DistanceMatrix matrix = distance_matrix(diagrams, spec.wasserstein_q);
    write_output("distances.csv", [&](std::ostream& out) { write_matrix_csv(matrix, out); });

    auto coords = mds_project(matrix, 2);
    write_output("projection.csv",
                 [&](std::ostream& out) { write_projection_csv(matrix, coords, out); });

    write_output("stats.json", [&](std::ostream& out) {
        out << "{\"spec_hash\": \"" << result.spec_hash << "\", \"inputs\": [";
        for (std::size_t i = 0; i < input_summaries.size(); ++i) {
            const auto& [label, nv, ne] = input_summaries[i];
            if (i) out << ", ";
            out << "{\"label\": " << nlohmann::json(label).dump() << ", \"n_vertices\": " << nv
                << ", \"n_edges\": " << ne
                << ", \"diagram_points\": " << diagrams[i].second.total_points() << "}";
        }
        out << "], \"failed\": " << result.failures.size() << "}\n";
    });

    fs::path manifest_path = outdir / "manifest.json";
    {
        std::ofstream out(manifest_path);
        if (!out) throw input_error("cannot write " + manifest_path.string());
        out << "{\"spec_hash\": \"" << result.spec_hash << "\", \"outputs\": {";
        bool first = true;
        for (const auto& [rel, hash] : result.output_checksums) {
            if (!first) out << ", ";
            first = false;
            out << nlohmann::json(rel).dump() << ": \"" << hash << "\"";
        }
        out << "}, \"failures\": {";
        first = true;
        for (const auto& [label, msg] : result.failures) {
            if (!first) out << ", ";
            first = false;
            out << nlohmann::json(label).dump() << ": " << nlohmann::json(msg).dump();
        }
        out << "}}\n";
    }
    result.manifest_path = manifest_path.generic_string();
    return result;
}

}  // namespace lowerstar
