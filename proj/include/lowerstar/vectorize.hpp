#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "lowerstar/common.hpp"
#include "lowerstar/persistence.hpp"

namespace lowerstar {

// Uniform sample grid on the filtration-value axis.
struct VectorizeGrid {
    double t_min;
    double t_max;
    int resolution;

    void validate() const {
        if (!(t_min < t_max)) throw input_error("grid requires t_min < t_max");
        if (resolution < 2) throw input_error("grid resolution must be >= 2");
    }

    double sample(int i) const {
        return t_min + (t_max - t_min) * static_cast<double>(i) / (resolution - 1);
    }
};

enum class VectorScheme { betti, landscape, image };

inline std::string to_string(VectorScheme s) {
    switch (s) {
        case VectorScheme::betti: return "betti";
        case VectorScheme::landscape: return "landscape";
        default: return "image";
    }
}

// Fixed-length feature vector; length depends only on scheme + params.
struct FeatureVector {
    std::vector<double> values;
    VectorScheme scheme;
    std::string params;  // canonical parameter string, hashed on export
};

// Shared grid covering a diagram collection: [min birth, max death]. Keeps
// vectors of different diagrams comparable.
inline VectorizeGrid default_grid(const std::vector<PersistenceDiagram>& diagrams,
                                  int resolution = 100) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& d : diagrams) {
        detail::require_finite(d, "default_grid");
        for (const auto& [b, dd] : d.finite) {
            lo = std::min(lo, b);
            hi = std::max(hi, dd);
        }
    }
    if (!(lo < hi)) {  // empty collection or all points coincide
        lo = lo == std::numeric_limits<double>::infinity() ? 0.0 : lo - 0.5;
        hi = lo + 1.0;
    }
    return {lo, hi, resolution};
}

// Betti curve: at each grid sample t, the number of pairs with b <= t < d.
inline FeatureVector betti_curve(const PersistenceDiagram& d, const VectorizeGrid& grid) {
    detail::require_finite(d, "betti_curve");
    grid.validate();
    FeatureVector fv;
    fv.scheme = VectorScheme::betti;
    fv.params = "tmin=" + format_g17(grid.t_min) + ";tmax=" + format_g17(grid.t_max) +
                ";res=" + std::to_string(grid.resolution);
    fv.values.resize(grid.resolution, 0.0);
    for (int i = 0; i < grid.resolution; ++i) {
        double t = grid.sample(i);
        int count = 0;
        for (const auto& [b, dd] : d.finite)
            if (b <= t && t < dd) ++count;
        fv.values[i] = count;
    }
    return fv;
}

// Persistence landscape: lambda_j(t) is the j-th largest tent value
// max(0, min(t - b, d - t)); levels beyond the pair count are 0. Levels are
// concatenated row-major into k x resolution values.
inline FeatureVector landscape(const PersistenceDiagram& d, int levels,
                               const VectorizeGrid& grid) {
    detail::require_finite(d, "landscape");
    grid.validate();
    if (levels < 1) throw input_error("landscape requires at least one level");
    FeatureVector fv;
    fv.scheme = VectorScheme::landscape;
    fv.params = "k=" + std::to_string(levels) + ";tmin=" + format_g17(grid.t_min) +
                ";tmax=" + format_g17(grid.t_max) + ";res=" + std::to_string(grid.resolution);
    fv.values.assign(static_cast<std::size_t>(levels) * grid.resolution, 0.0);
    std::vector<double> tent(d.finite.size());
    for (int i = 0; i < grid.resolution; ++i) {
        double t = grid.sample(i);
        for (std::size_t p = 0; p < d.finite.size(); ++p) {
            auto [b, dd] = d.finite[p];
            tent[p] = std::max(0.0, std::min(t - b, dd - t));
        }
        int top = std::min<int>(levels, static_cast<int>(tent.size()));
        std::partial_sort(tent.begin(), tent.begin() + top, tent.end(), std::greater<>());
        for (int j = 0; j < top; ++j)
            fv.values[static_cast<std::size_t>(j) * grid.resolution + i] = tent[j];
    }
    return fv;
}

struct ImageParams {
    int nx = 20;
    int ny = 20;
    double sigma = 0.1;
    double b_min = 0.0, b_max = 1.0;  // birth axis
    double p_min = 0.0, p_max = 1.0;  // persistence axis

    void validate() const {
        if (nx < 1 || ny < 1) throw input_error("image resolution must be >= 1");
        if (!(sigma > 0.0)) throw input_error("image sigma must be > 0");
        if (!(b_min < b_max) || !(p_min < p_max)) throw input_error("image bounds empty");
    }
};

// Persistence image: pairs mapped to (birth, persistence), summed Gaussians
// weighted linearly by persistence / max persistence, evaluated at pixel
// centers. Pixels are row-major over the persistence axis: index = iy*nx + ix.
inline FeatureVector persistence_image(const PersistenceDiagram& d, const ImageParams& params) {
    detail::require_finite(d, "persistence_image");
    params.validate();
    FeatureVector fv;
    fv.scheme = VectorScheme::image;
    fv.params = "nx=" + std::to_string(params.nx) + ";ny=" + std::to_string(params.ny) +
                ";sigma=" + format_g17(params.sigma) + ";bmin=" + format_g17(params.b_min) +
                ";bmax=" + format_g17(params.b_max) + ";pmin=" + format_g17(params.p_min) +
                ";pmax=" + format_g17(params.p_max);
    fv.values.assign(static_cast<std::size_t>(params.nx) * params.ny, 0.0);

    double max_pers = 0.0;
    for (const auto& [b, dd] : d.finite) max_pers = std::max(max_pers, dd - b);
    if (max_pers == 0.0) return fv;  // empty or all-diagonal diagram: zero image

    const double dx = (params.b_max - params.b_min) / params.nx;
    const double dy = (params.p_max - params.p_min) / params.ny;
    const double norm = 1.0 / (2.0 * M_PI * params.sigma * params.sigma);
    const double inv2s2 = 1.0 / (2.0 * params.sigma * params.sigma);
    for (const auto& [b, dd] : d.finite) {
        const double pers = dd - b;
        const double weight = pers / max_pers;
        if (weight == 0.0) continue;
        for (int iy = 0; iy < params.ny; ++iy) {
            const double cy = params.p_min + (iy + 0.5) * dy;
            for (int ix = 0; ix < params.nx; ++ix) {
                const double cx = params.b_min + (ix + 0.5) * dx;
                const double r2 = (cx - b) * (cx - b) + (cy - pers) * (cy - pers);
                fv.values[static_cast<std::size_t>(iy) * params.nx + ix] +=
                    weight * norm * std::exp(-r2 * inv2s2);
            }
        }
    }
    return fv;
}

// CSV row: label, scheme, params-hash, values...
inline void write_feature_csv(const std::string& label, const FeatureVector& fv,
                              std::ostream& out) {
    out << label << "," << to_string(fv.scheme) << "," << hash_hex(fnv1a64(fv.params));
    for (double v : fv.values) out << "," << format_g17(v);
    out << "\n";
}

}  // namespace lowerstar
