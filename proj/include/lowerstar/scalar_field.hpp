#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lowerstar/common.hpp"
#include "lowerstar/graph.hpp"

namespace lowerstar {

// One finite real value per vertex of an associated graph; the d=1 encoder
// output. Carries the graph fingerprint so filtrations can reject fields
// computed on a different graph.
class ScalarField {
public:
    ScalarField(const WeightedGraph& g, std::vector<double> values)
        : values_(std::move(values)), graph_fingerprint_(g.fingerprint()) {
        if (static_cast<int>(values_.size()) != g.n_vertices())
            throw input_error("scalar field size does not match vertex count");
        for (double x : values_)
            if (!std::isfinite(x)) throw numeric_error("scalar field value not finite");
    }

    double operator[](int v) const { return values_[v]; }
    int size() const { return static_cast<int>(values_.size()); }
    const std::vector<double>& values() const { return values_; }
    std::uint64_t graph_fingerprint() const { return graph_fingerprint_; }

    bool bound_to(const WeightedGraph& g) const { return graph_fingerprint_ == g.fingerprint(); }

    double max_value() const {
        double m = -std::numeric_limits<double>::infinity();
        for (double x : values_) m = std::max(m, x);
        return m;
    }

private:
    std::vector<double> values_;
    std::uint64_t graph_fingerprint_;
};

// CSV export: header `vertex,value`, one row per vertex.
inline void write_field_csv(const ScalarField& f, std::ostream& out) {
    out << "vertex,value\n";
    for (int v = 0; v < f.size(); ++v) out << v << "," << format_g17(f[v]) << "\n";
}

inline ScalarField read_field_csv(const WeightedGraph& g, std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != "vertex,value")
        throw input_error("scalar field CSV: missing vertex,value header");
    std::vector<double> values(g.n_vertices(),
                               std::numeric_limits<double>::quiet_NaN());
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        auto comma = t.find(',');
        if (comma == std::string::npos)
            throw input_error("scalar field CSV: malformed line " + std::to_string(line_no));
        int v;
        double x;
        try {
            v = std::stoi(t.substr(0, comma));
            x = std::stod(t.substr(comma + 1));
        } catch (const std::exception&) {
            throw input_error("scalar field CSV: malformed line " + std::to_string(line_no));
        }
        if (v < 0 || v >= g.n_vertices())
            throw input_error("scalar field CSV: vertex id out of range on line " +
                              std::to_string(line_no));
        values[v] = x;
    }
    for (int v = 0; v < g.n_vertices(); ++v)
        if (std::isnan(values[v]))
            throw input_error("scalar field CSV: missing value for vertex " + std::to_string(v));
    return ScalarField(g, std::move(values));
}

}  // namespace lowerstar
