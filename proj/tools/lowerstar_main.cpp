// Command-line front end: ingest graphs, embed, compute diagrams, compare
// them, vectorize, project, and drive whole experiments from a spec file.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lowerstar/lowerstar.hpp"

namespace {

using namespace lowerstar;

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    fn(out);
}

struct EncoderOptions {
    std::string encoder = "degree";
    WalkConfig walk;

    void attach(CLI::App* cmd) {
        cmd->add_option("--encoder", encoder, "deepwalk|node2vec|diff2vec|degree");
        cmd->add_option("--seed", walk.seed, "RNG seed");
        cmd->add_option("--walks-per-node", walk.walks_per_node);
        cmd->add_option("--walk-length", walk.walk_length);
        cmd->add_option("--window", walk.window, "skip-gram window");
        cmd->add_option("--negatives", walk.negatives, "negative samples per pair");
        cmd->add_option("--epochs", walk.epochs);
        cmd->add_option("--learning-rate", walk.learning_rate);
        cmd->add_option("--p", walk.p, "node2vec return parameter");
        cmd->add_option("--q", walk.q, "node2vec in-out parameter");
        cmd->add_option("--diffusion-size", walk.diffusion_size, "diff2vec cover size");
    }

    ScalarField encode_graph(const WeightedGraph& g) const {
        return encode(g, encoder_kind_from_string(encoder), walk);
    }
};

void write_stability_json(const StabilityStats& s, std::ostream& out) {
    out << "{\"runs\": " << s.runs
        << ", \"mean_wasserstein\": " << format_g17(s.mean_wasserstein)
        << ", \"max_wasserstein\": " << format_g17(s.max_wasserstein)
        << ", \"mean_field_sup\": " << format_g17(s.mean_field_sup)
        << ", \"max_field_sup\": " << format_g17(s.max_field_sup) << "}\n";
}

PersistenceDiagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return read_diagram_json(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topological graph descriptors from scalar node embeddings"};
    app.require_subcommand(1);

    // ingest
    std::string in_path, out_path;
    auto* ingest = app.add_subcommand("ingest", "Edge list or OFF mesh -> canonical edge list");
    ingest->add_option("input", in_path)->required();
    ingest->add_option("-o,--output", out_path, "output path (default stdout)");

    // embed
    EncoderOptions embed_enc;
    std::string embed_graph, embed_out, embed_dump_walks;
    auto* embed = app.add_subcommand("embed", "Graph -> scalar field CSV");
    embed->add_option("graph", embed_graph)->required();
    embed_enc.attach(embed);
    embed->add_option("-o,--output", embed_out);
    embed->add_option("--dump-walks", embed_dump_walks, "also write the walk corpus");

    // diagram
    EncoderOptions diag_enc;
    std::string diag_graph, diag_field, diag_out, diag_finitize = "none", diag_dump_filt;
    int diag_node = -1, diag_hops = 1;
    bool diag_drop_zero = false;
    auto* diagram = app.add_subcommand("diagram", "Graph + field or encoder -> diagram JSON");
    diagram->add_option("graph", diag_graph)->required();
    diagram->add_option("--field", diag_field, "scalar field CSV (otherwise --encoder)");
    diag_enc.attach(diagram);
    diagram->add_option("--finitize", diag_finitize, "cap|drop|none (default none)");
    diagram->add_option("--node", diag_node, "node-level descriptor for this vertex");
    diagram->add_option("--hops", diag_hops, "ego-network hops for --node");
    diagram->add_flag("--drop-zero", diag_drop_zero, "drop zero-length pairs");
    diagram->add_option("--dump-filtration", diag_dump_filt);
    diagram->add_option("-o,--output", diag_out);

    // dist
    std::vector<std::string> dist_inputs;
    std::string dist_out, dist_finitize = "cap";
    double dist_q = 2.0;
    auto* dist = app.add_subcommand("dist", "Diagram JSONs -> Wasserstein distance matrix CSV");
    dist->add_option("diagrams", dist_inputs)->required()->expected(-1);
    dist->add_option("--q", dist_q, "Wasserstein order (default 2)");
    dist->add_option("--finitize", dist_finitize, "cap|drop (default cap)");
    dist->add_option("-o,--output", dist_out);

    // vectorize
    std::vector<std::string> vec_inputs;
    std::string vec_out, vec_scheme = "betti";
    int vec_res = 100, vec_levels = 3, vec_nx = 20, vec_ny = 20;
    double vec_sigma = 0.0;
    std::optional<double> vec_tmin, vec_tmax;
    auto* vectorize = app.add_subcommand("vectorize", "Diagram JSONs -> feature vector CSV");
    vectorize->add_option("diagrams", vec_inputs)->required()->expected(-1);
    vectorize->add_option("--scheme", vec_scheme, "betti|landscape|image");
    vectorize->add_option("--tmin", vec_tmin, "grid start (default: min birth)");
    vectorize->add_option("--tmax", vec_tmax, "grid end (default: max death)");
    vectorize->add_option("--res", vec_res, "grid resolution (default 100)");
    vectorize->add_option("--levels", vec_levels, "landscape levels (default 3)");
    vectorize->add_option("--nx", vec_nx, "image pixels, birth axis");
    vectorize->add_option("--ny", vec_ny, "image pixels, persistence axis");
    vectorize->add_option("--sigma", vec_sigma, "image kernel width (default: grid-scaled)");
    vectorize->add_option("-o,--output", vec_out);

    // project
    std::string proj_in, proj_out;
    auto* project = app.add_subcommand("project", "Distance matrix CSV -> 2-d MDS coordinates");
    project->add_option("matrix", proj_in)->required();
    project->add_option("-o,--output", proj_out);

    // stability
    EncoderOptions stab_enc;
    std::string stab_graph, stab_out, stab_finitize = "cap";
    int stab_runs = 5;
    double stab_q = 2.0;
    auto* stability = app.add_subcommand(
        "stability", "Per-seed descriptor variation statistics -> stats JSON");
    stability->add_option("graph", stab_graph)->required();
    stab_enc.attach(stability);
    stability->add_option("--runs", stab_runs, "number of seeds (default 5)");
    stability->add_option("--wasserstein-q", stab_q);
    stability->add_option("--finitize", stab_finitize, "cap|drop");
    stability->add_option("-o,--output", stab_out);

    // run
    std::string run_spec;
    auto* run = app.add_subcommand("run", "Experiment spec file -> all artifacts");
    run->add_option("spec", run_spec)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            WeightedGraph g = load_graph_auto(in_path);
            with_output(out_path, [&](std::ostream& out) { write_edge_list(g, out); });
        } else if (*embed) {
            WeightedGraph g = load_graph_auto(embed_graph);
            if (!embed_dump_walks.empty()) {
                EncoderKind kind = encoder_kind_from_string(embed_enc.encoder);
                WalkCorpus corpus;
                if (kind == EncoderKind::deepwalk)
                    corpus = deepwalk_walks(g, embed_enc.walk);
                else if (kind == EncoderKind::node2vec)
                    corpus = node2vec_walks(g, embed_enc.walk);
                else if (kind == EncoderKind::diff2vec)
                    corpus = diff2vec_sequences(g, embed_enc.walk);
                else
                    throw input_error("--dump-walks requires a walk-based encoder");
                with_output(embed_dump_walks,
                            [&](std::ostream& out) { dump_corpus(corpus, out); });
            }
            ScalarField f = embed_enc.encode_graph(g);
            with_output(embed_out, [&](std::ostream& out) { write_field_csv(f, out); });
        } else if (*diagram) {
            WeightedGraph g = load_graph_auto(diag_graph);
            PersistenceDiagram d;
            auto compute = [&](const WeightedGraph& graph, const ScalarField& f) {
                auto filt = lower_star(graph, f);
                if (!diag_dump_filt.empty())
                    with_output(diag_dump_filt,
                                [&](std::ostream& out) { dump_filtration(filt, out); });
                return zero_persistence(filt, diag_drop_zero);
            };
            auto field_for = [&](const WeightedGraph& graph) {
                if (diag_field.empty()) return diag_enc.encode_graph(graph);
                std::ifstream in(diag_field);
                if (!in) throw input_error("cannot open " + diag_field);
                return read_field_csv(graph, in);
            };
            if (diag_node >= 0) {
                ScalarField f = field_for(g);
                EgoNetwork ego = ego_network(g, diag_node, diag_hops);
                std::vector<double> restricted;
                for (int orig : ego.original_ids) restricted.push_back(f[orig]);
                d = compute(ego.graph, ScalarField(ego.graph, std::move(restricted)));
            } else {
                d = compute(g, field_for(g));
            }
            if (diag_finitize != "none")
                d = finitize(d, finitize_policy_from_string(diag_finitize));
            with_output(diag_out, [&](std::ostream& out) { write_diagram_json(d, out); });
        } else if (*dist) {
            FinitizePolicy policy = finitize_policy_from_string(dist_finitize);
            std::vector<std::pair<std::string, PersistenceDiagram>> diagrams;
            for (const auto& path : dist_inputs)
                diagrams.emplace_back(std::filesystem::path(path).stem().string(),
                                      finitize(load_diagram(path), policy));
            DistanceMatrix m = distance_matrix(diagrams, dist_q);
            with_output(dist_out, [&](std::ostream& out) { write_matrix_csv(m, out); });
        } else if (*vectorize) {
            std::vector<std::pair<std::string, PersistenceDiagram>> diagrams;
            std::vector<PersistenceDiagram> plain;
            for (const auto& path : vec_inputs) {
                auto d = load_diagram(path);
                if (!d.essential.empty())
                    throw input_error(path + ": diagram has essential classes; finitize first");
                plain.push_back(d);
                diagrams.emplace_back(std::filesystem::path(path).stem().string(),
                                      std::move(d));
            }
            VectorizeGrid grid = default_grid(plain, vec_res);
            if (vec_tmin) grid.t_min = *vec_tmin;
            if (vec_tmax) grid.t_max = *vec_tmax;
            with_output(vec_out, [&](std::ostream& out) {
                for (const auto& [label, d] : diagrams) {
                    if (vec_scheme == "betti") {
                        write_feature_csv(label, betti_curve(d, grid), out);
                    } else if (vec_scheme == "landscape") {
                        write_feature_csv(label, landscape(d, vec_levels, grid), out);
                    } else if (vec_scheme == "image") {
                        double max_pers = 0.0;
                        for (const auto& dd : plain)
                            for (const auto& [b, de] : dd.finite)
                                max_pers = std::max(max_pers, de - b);
                        if (max_pers == 0.0) max_pers = 1.0;
                        ImageParams params;
                        params.nx = vec_nx;
                        params.ny = vec_ny;
                        params.b_min = grid.t_min;
                        params.b_max = grid.t_max;
                        params.p_min = 0.0;
                        params.p_max = max_pers;
                        params.sigma =
                            vec_sigma > 0.0 ? vec_sigma : 0.05 * (grid.t_max - grid.t_min);
                        write_feature_csv(label, persistence_image(d, params), out);
                    } else {
                        throw input_error("unknown scheme: " + vec_scheme);
                    }
                }
            });
        } else if (*project) {
            std::ifstream in(proj_in);
            if (!in) throw input_error("cannot open " + proj_in);
            DistanceMatrix m = read_matrix_csv(in);
            auto coords = mds_project(m, 2);
            with_output(proj_out,
                        [&](std::ostream& out) { write_projection_csv(m, coords, out); });
        } else if (*stability) {
            WeightedGraph g = load_graph_auto(stab_graph);
            if (stab_runs < 2) throw input_error("--runs must be >= 2");
            ExperimentSpec spec;
            spec.inputs.emplace_back("graph", stab_graph);
            spec.encoder = encoder_kind_from_string(stab_enc.encoder);
            spec.walk = stab_enc.walk;
            spec.wasserstein_q = stab_q;
            spec.finitize_policy = finitize_policy_from_string(stab_finitize);
            spec.seeds.clear();
            for (int i = 0; i < stab_runs; ++i) spec.seeds.push_back(stab_enc.walk.seed + i);
            StabilityStats stats = stability_experiment(g, spec);
            with_output(stab_out, [&](std::ostream& out) { write_stability_json(stats, out); });
        } else if (*run) {
            RunResult result = run_experiment(load_spec_file(run_spec));
            std::cout << "wrote " << result.output_checksums.size() << " artifact(s), "
                      << result.failures.size() << " failure(s); manifest at "
                      << result.manifest_path << "\n";
            for (const auto& [label, msg] : result.failures)
                std::cerr << "failed input " << label << ": " << msg << "\n";
        }
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
