#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "lowerstar/common.hpp"
#include "lowerstar/graph.hpp"
#include "lowerstar/scalar_field.hpp"

namespace lowerstar {

struct WalkConfig {
    int walks_per_node = 10;
    int walk_length = 40;
    int window = 5;
    int negatives = 5;
    int epochs = 5;
    double learning_rate = 0.025;
    std::uint64_t seed = 1;
    double p = 1.0;  // node2vec return parameter
    double q = 1.0;  // node2vec in-out parameter
    int diffusion_size = 40;

    void validate() const {
        if (walks_per_node < 1 || walk_length < 1 || window < 1 || negatives < 1 ||
            epochs < 1 || diffusion_size < 1)
            throw input_error("walk config counts must be >= 1");
        if (!(learning_rate > 0.0)) throw input_error("learning rate must be > 0");
        if (!(p > 0.0) || !(q > 0.0)) throw input_error("node2vec p, q must be > 0");
    }
};

using WalkCorpus = std::vector<std::vector<int>>;

namespace detail {

constexpr std::uint64_t kDeepWalkStream = 0x77616c6bULL;
constexpr std::uint64_t kNode2VecStream = 0x6e32765fULL;
constexpr std::uint64_t kDiffusionStream = 0x64696666ULL;
constexpr std::uint64_t kSgnsInitStream = 0x696e6974ULL;
constexpr std::uint64_t kSgnsNegStream = 0x6e656773ULL;

inline void require_nonempty(const WeightedGraph& g) {
    if (g.n_vertices() == 0) throw input_error("graph has no vertices");
}

}  // namespace detail

// Uniform first-order random walks: walks_per_node walks per start vertex,
// walk_length vertices each, stopping early at a degree-0 vertex. Each walk
// has its own RNG stream derived from (seed, start, walk index), so the
// corpus does not depend on scheduling.
inline WalkCorpus deepwalk_walks(const WeightedGraph& g, const WalkConfig& cfg) {
    detail::require_nonempty(g);
    cfg.validate();
    WalkCorpus corpus;
    corpus.reserve(static_cast<std::size_t>(g.n_vertices()) * cfg.walks_per_node);
    for (int start = 0; start < g.n_vertices(); ++start) {
        for (int j = 0; j < cfg.walks_per_node; ++j) {
            SplitMix64 rng(derive_seed(cfg.seed ^ detail::kDeepWalkStream, start, j));
            std::vector<int> walk{start};
            while (static_cast<int>(walk.size()) < cfg.walk_length) {
                const auto& nbrs = g.neighbors(walk.back());
                if (nbrs.empty()) break;
                walk.push_back(nbrs[rng.below(nbrs.size())]);
            }
            corpus.push_back(std::move(walk));
        }
    }
    return corpus;
}

// Unnormalized node2vec transition weights out of `cur` after arriving from
// `prev`, aligned with g.neighbors(cur): 1/p back to prev, 1 to common
// neighbors of prev, 1/q otherwise.
inline std::vector<double> node2vec_step_weights(const WeightedGraph& g, int prev, int cur,
                                                 const WalkConfig& cfg) {
    const auto& nbrs = g.neighbors(cur);
    std::vector<double> w(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (nbrs[i] == prev)
            w[i] = 1.0 / cfg.p;
        else if (g.has_edge(nbrs[i], prev))
            w[i] = 1.0;
        else
            w[i] = 1.0 / cfg.q;
    }
    return w;
}

// Second-order biased walks; the first step is uniform.
inline WalkCorpus node2vec_walks(const WeightedGraph& g, const WalkConfig& cfg) {
    detail::require_nonempty(g);
    cfg.validate();
    WalkCorpus corpus;
    corpus.reserve(static_cast<std::size_t>(g.n_vertices()) * cfg.walks_per_node);
    for (int start = 0; start < g.n_vertices(); ++start) {
        for (int j = 0; j < cfg.walks_per_node; ++j) {
            SplitMix64 rng(derive_seed(cfg.seed ^ detail::kNode2VecStream, start, j));
            std::vector<int> walk{start};
            while (static_cast<int>(walk.size()) < cfg.walk_length) {
                int cur = walk.back();
                const auto& nbrs = g.neighbors(cur);
                if (nbrs.empty()) break;
                if (walk.size() == 1) {
                    walk.push_back(nbrs[rng.below(nbrs.size())]);
                    continue;
                }
                auto w = node2vec_step_weights(g, walk[walk.size() - 2], cur, cfg);
                double total = 0.0;
                for (double x : w) total += x;
                double r = rng.unit() * total;
                std::size_t pick = 0;
                for (; pick + 1 < w.size(); ++pick) {
                    r -= w[pick];
                    if (r < 0.0) break;
                }
                walk.push_back(nbrs[pick]);
            }
            corpus.push_back(std::move(walk));
        }
    }
    return corpus;
}

// Per start vertex, grows one random diffusion subtree of
// min(diffusion_size, component size) vertices - repeatedly attach a uniform
// outside-neighbor of a uniform frontier vertex - and emits its Euler tour
// (2m-1 entries for an m-vertex tree).
inline WalkCorpus diff2vec_sequences(const WeightedGraph& g, const WalkConfig& cfg) {
    detail::require_nonempty(g);
    cfg.validate();
    WalkCorpus corpus;
    corpus.reserve(g.n_vertices());
    std::vector<char> in_tree(g.n_vertices(), 0);
    for (int start = 0; start < g.n_vertices(); ++start) {
        SplitMix64 rng(derive_seed(cfg.seed ^ detail::kDiffusionStream, start));
        std::vector<int> tree_vertices{start};
        std::vector<std::vector<int>> children(g.n_vertices());
        std::fill(in_tree.begin(), in_tree.end(), 0);
        in_tree[start] = 1;
        while (static_cast<int>(tree_vertices.size()) < cfg.diffusion_size) {
            std::vector<int> frontier;
            for (int u : tree_vertices)
                for (int x : g.neighbors(u))
                    if (!in_tree[x]) {
                        frontier.push_back(u);
                        break;
                    }
            if (frontier.empty()) break;  // tree covers the whole component
            int u = frontier[rng.below(frontier.size())];
            std::vector<int> outside;
            for (int x : g.neighbors(u))
                if (!in_tree[x]) outside.push_back(x);
            int x = outside[rng.below(outside.size())];
            in_tree[x] = 1;
            tree_vertices.push_back(x);
            children[u].push_back(x);
        }
        // Euler tour rooted at start: emit on entry and on each return.
        std::vector<int> tour;
        tour.reserve(2 * tree_vertices.size() - 1);
        std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
        tour.push_back(start);
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            if (next < children[u].size()) {
                int c = children[u][next++];
                tour.push_back(c);
                stack.push_back({c, 0});
            } else {
                stack.pop_back();
                if (!stack.empty()) tour.push_back(stack.back().first);
            }
        }
        corpus.push_back(std::move(tour));
    }
    return corpus;
}

// Debug dump: one walk per line, space-separated vertex ids.
inline void dump_corpus(const WalkCorpus& corpus, std::ostream& out) {
    for (const auto& walk : corpus) {
        for (std::size_t i = 0; i < walk.size(); ++i) {
            if (i) out << " ";
            out << walk[i];
        }
        out << "\n";
    }
}

// One skip-gram sample: a (center, context) pair plus its negative draws.
struct SgnsSample {
    int center;
    int context;
    std::vector<int> negatives;
};

namespace detail {

inline double log_sigmoid(double x) {
    return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
    return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

// Cumulative unigram^0.75 table over corpus tokens.
struct NegativeTable {
    std::vector<int> vertices;
    std::vector<double> cumulative;
    double total = 0.0;

    NegativeTable(const WalkCorpus& corpus, int n_vertices) {
        std::vector<std::int64_t> counts(n_vertices, 0);
        for (const auto& walk : corpus)
            for (int v : walk) {
                if (v < 0 || v >= n_vertices)
                    throw input_error("corpus vertex id out of range: " + std::to_string(v));
                ++counts[v];
            }
        for (int v = 0; v < n_vertices; ++v) {
            if (counts[v] == 0) continue;
            total += std::pow(static_cast<double>(counts[v]), 0.75);
            vertices.push_back(v);
            cumulative.push_back(total);
        }
    }

    int sample(SplitMix64& rng) const {
        double r = rng.unit() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        std::size_t i = std::min<std::size_t>(it - cumulative.begin(), vertices.size() - 1);
        return vertices[i];
    }
};

template <typename Fn>
void for_each_sgns_sample(const WalkCorpus& corpus, int n_vertices, const WalkConfig& cfg,
                          Fn&& fn) {
    NegativeTable table(corpus, n_vertices);
    SplitMix64 rng(derive_seed(cfg.seed ^ kSgnsNegStream, 0));
    SgnsSample sample;
    sample.negatives.resize(cfg.negatives);
    for (const auto& walk : corpus) {
        const int len = static_cast<int>(walk.size());
        for (int i = 0; i < len; ++i) {
            for (int j = std::max(0, i - cfg.window); j <= std::min(len - 1, i + cfg.window);
                 ++j) {
                if (j == i) continue;
                sample.center = walk[i];
                sample.context = walk[j];
                for (int k = 0; k < cfg.negatives; ++k) sample.negatives[k] = table.sample(rng);
                fn(sample);
            }
        }
    }
}

}  // namespace detail

// Materialized skip-gram samples for a corpus; the trainer iterates the same
// sequence each epoch.
inline std::vector<SgnsSample> sgns_samples(const WalkCorpus& corpus, int n_vertices,
                                            const WalkConfig& cfg) {
    std::vector<SgnsSample> samples;
    detail::for_each_sgns_sample(corpus, n_vertices, cfg,
                                 [&](const SgnsSample& s) { samples.push_back(s); });
    return samples;
}

// SGNS objective: sum of log sigma(z_u z_v) + sum_n log sigma(-z_u z_n).
inline double sgns_objective(const std::vector<SgnsSample>& samples,
                             const std::vector<double>& z) {
    double obj = 0.0;
    for (const auto& s : samples) {
        obj += detail::log_sigmoid(z[s.center] * z[s.context]);
        for (int n : s.negatives) obj += detail::log_sigmoid(-z[s.center] * z[n]);
    }
    return obj;
}

// Analytic gradient of sgns_objective with respect to every embedding.
inline std::vector<double> sgns_gradient(const std::vector<SgnsSample>& samples,
                                         const std::vector<double>& z) {
    std::vector<double> grad(z.size(), 0.0);
    for (const auto& s : samples) {
        double g = 1.0 - detail::sigmoid(z[s.center] * z[s.context]);
        grad[s.center] += g * z[s.context];
        grad[s.context] += g * z[s.center];
        for (int n : s.negatives) {
            double gn = -detail::sigmoid(z[s.center] * z[n]);
            grad[s.center] += gn * z[n];
            grad[n] += gn * z[s.center];
        }
    }
    return grad;
}

// Trains scalar embeddings by stochastic gradient ascent on the SGNS
// objective: per-sample updates in corpus order, learning rate decaying
// linearly to 1e-4 of its start value, values clamped to [-50, 50] against
// sigmoid overflow. Deterministic given the seed; single-threaded by design.
// Vertices absent from the corpus keep their initialization (warned once).
inline ScalarField train_sgns_1d(const WalkCorpus& corpus, const WeightedGraph& g,
                                 const WalkConfig& cfg) {
    cfg.validate();
    const int n = g.n_vertices();
    std::size_t n_tokens = 0;
    for (const auto& walk : corpus) n_tokens += walk.size();
    if (corpus.empty() || n_tokens == 0) throw input_error("empty corpus");

    std::vector<double> z(n);
    SplitMix64 init_rng(derive_seed(cfg.seed ^ detail::kSgnsInitStream, 0));
    for (double& x : z) x = init_rng.unit() - 0.5;

    std::vector<char> observed(n, 0);
    for (const auto& walk : corpus)
        for (int v : walk) {
            if (v < 0 || v >= n)
                throw input_error("corpus vertex id out of range: " + std::to_string(v));
            observed[v] = 1;
        }

    std::size_t n_samples = 0;
    detail::for_each_sgns_sample(corpus, n, cfg, [&](const SgnsSample&) { ++n_samples; });

    const double total = std::max<double>(1.0, static_cast<double>(n_samples) * cfg.epochs);
    auto clamp = [](double x) { return std::min(50.0, std::max(-50.0, x)); };
    std::size_t processed = 0;
    for (int epoch = 0; epoch < cfg.epochs && n_samples > 0; ++epoch) {
        detail::for_each_sgns_sample(corpus, n, cfg, [&](const SgnsSample& s) {
            double lr = cfg.learning_rate *
                        std::max(1e-4, 1.0 - static_cast<double>(processed) / total);
            ++processed;
            double zu = z[s.center];
            double du = 0.0;
            double g_pos = 1.0 - detail::sigmoid(zu * z[s.context]);
            du += g_pos * z[s.context];
            z[s.context] = clamp(z[s.context] + lr * g_pos * zu);
            for (int nb : s.negatives) {
                double g_neg = -detail::sigmoid(zu * z[nb]);
                du += g_neg * z[nb];
                z[nb] = clamp(z[nb] + lr * g_neg * zu);
            }
            z[s.center] = clamp(zu + lr * du);
        });
    }

    int unobserved = 0;
    for (int v = 0; v < n; ++v)
        if (!observed[v]) ++unobserved;
    if (unobserved > 0)
        std::cerr << "warning: " << unobserved
                  << " vertex(es) never observed in corpus; keeping initialization values\n";
    return ScalarField(g, std::move(z));
}

// Deterministic baseline: degree plus a tiny per-id jitter so values are
// distinct and ties resolve by id.
inline ScalarField degree_encoder(const WeightedGraph& g) {
    std::vector<double> values(g.n_vertices());
    for (int v = 0; v < g.n_vertices(); ++v)
        values[v] = static_cast<double>(g.degree(v)) + static_cast<double>(v) * 1e-9;
    return ScalarField(g, std::move(values));
}

enum class EncoderKind { deepwalk, node2vec, diff2vec, degree };

inline EncoderKind encoder_kind_from_string(const std::string& s) {
    if (s == "deepwalk") return EncoderKind::deepwalk;
    if (s == "node2vec") return EncoderKind::node2vec;
    if (s == "diff2vec") return EncoderKind::diff2vec;
    if (s == "degree") return EncoderKind::degree;
    throw input_error("unknown encoder: " + s);
}

inline std::string to_string(EncoderKind k) {
    switch (k) {
        case EncoderKind::deepwalk: return "deepwalk";
        case EncoderKind::node2vec: return "node2vec";
        case EncoderKind::diff2vec: return "diff2vec";
        default: return "degree";
    }
}

inline ScalarField encode(const WeightedGraph& g, EncoderKind kind, const WalkConfig& cfg) {
    switch (kind) {
        case EncoderKind::deepwalk: return train_sgns_1d(deepwalk_walks(g, cfg), g, cfg);
        case EncoderKind::node2vec: return train_sgns_1d(node2vec_walks(g, cfg), g, cfg);
        case EncoderKind::diff2vec: return train_sgns_1d(diff2vec_sequences(g, cfg), g, cfg);
        default: return degree_encoder(g);
    }
}

}  // namespace lowerstar
