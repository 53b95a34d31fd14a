#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gsmatch {

/// Every tunable of the pipeline. Defaults are the published constants where
/// they exist; the rest are documented in README.md.
struct CostParams {
    // contour sampling
    int sample_count = 200;

    // angle sharpness / break-points
    double ns_fraction = 0.03;  // neighbourhood half-width as a fraction of contour points
    int ns_min = 4;
    double sigma_ratio = 1.0 / 3.0;  // Gaussian sigma = N_s * sigma_ratio
    double sharpness_threshold = 20.0;
    double nms_factor = 1.0;  // suppression radius = N_s * nms_factor
    double opposite_search_fraction = 0.20;
    double opposite_gd_min_fraction = 0.05;
    double opposite_ed_ratio = 0.5;
    double d_k = 0.1;

    // groups of segments
    double c_min = 40.0;
    double c_max = 600.0;

    // unary / binary / skip costs
    double alpha_c = 300.0;
    double alpha_s = 200.0;
    double alpha_a = 200.0;
    double beta_a = 0.09;
    double beta_s = 1.5;
    double beta_skip = 210.0;
    double complexity_floor = 20.0;
    double dc_weight = 256.0;  // raster units -> cost units for the chamfer term

    // directional chamfer raster
    int n_orient = 20;
    double lambda = 4.0;
    double tau_clamp = 40.0;
    int canvas_width = 128;
    int canvas_height = 128;
    int canvas_margin = 39;       // pixels left of an open group's start anchor
    double canonical_length = 100.0;
    double raster_scale = 0.5;    // pixels per canonical unit

    /// Neighbourhood half-width N_s for a contour of `n` points.
    int neighborhood(std::size_t n) const {
        return std::max(ns_min, static_cast<int>(std::lround(ns_fraction * static_cast<double>(n))));
    }

    void validate() const;
};

namespace detail {

using ParamRef = std::variant<double CostParams::*, int CostParams::*>;

struct ParamEntry {
    std::string_view key;
    ParamRef ref;
};

inline const std::vector<ParamEntry>& param_table() {
    static const std::vector<ParamEntry> table = {
        {"sample_count", &CostParams::sample_count},
        {"ns_fraction", &CostParams::ns_fraction},
        {"ns_min", &CostParams::ns_min},
        {"sigma_ratio", &CostParams::sigma_ratio},
        {"sharpness_threshold", &CostParams::sharpness_threshold},
        {"nms_factor", &CostParams::nms_factor},
        {"opposite_search_fraction", &CostParams::opposite_search_fraction},
        {"opposite_gd_min_fraction", &CostParams::opposite_gd_min_fraction},
        {"opposite_ed_ratio", &CostParams::opposite_ed_ratio},
        {"d_k", &CostParams::d_k},
        {"c_min", &CostParams::c_min},
        {"c_max", &CostParams::c_max},
        {"alpha_c", &CostParams::alpha_c},
        {"alpha_s", &CostParams::alpha_s},
        {"alpha_a", &CostParams::alpha_a},
        {"beta_a", &CostParams::beta_a},
        {"beta_s", &CostParams::beta_s},
        {"beta_skip", &CostParams::beta_skip},
        {"complexity_floor", &CostParams::complexity_floor},
        {"dc_weight", &CostParams::dc_weight},
        {"n_orient", &CostParams::n_orient},
        {"lambda", &CostParams::lambda},
        {"tau_clamp", &CostParams::tau_clamp},
        {"canvas_width", &CostParams::canvas_width},
        {"canvas_height", &CostParams::canvas_height},
        {"canvas_margin", &CostParams::canvas_margin},
        {"raster_scale", &CostParams::raster_scale},
        {"canonical_length", &CostParams::canonical_length},
    };
    return table;
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

inline void CostParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("invalid parameter: ") + what);
    };
    require(sample_count >= 16, "sample_count");
    require(ns_fraction > 0.0 && ns_min >= 2, "ns_fraction/ns_min");
    require(sigma_ratio > 0.0, "sigma_ratio");
    require(sharpness_threshold >= 0.0, "sharpness_threshold");
    require(nms_factor > 0.0, "nms_factor");
    require(opposite_search_fraction > 0.0 && opposite_search_fraction <= 0.5, "opposite_search_fraction");
    require(opposite_gd_min_fraction > 0.0, "opposite_gd_min_fraction");
    require(opposite_ed_ratio > 0.0, "opposite_ed_ratio");
    require(d_k > 0.0 && d_k <= 1.0, "d_k");
    require(c_min > 0.0 && c_max >= c_min, "c_min/c_max");
    require(alpha_c > 0.0 && alpha_s > 0.0 && alpha_a > 0.0, "alpha");
    require(beta_a > 0.0 && beta_s > 0.0 && beta_skip > 0.0, "beta");
    require(complexity_floor > 0.0, "complexity_floor");
    require(dc_weight > 0.0, "dc_weight");
    require(n_orient >= 1 && n_orient <= 32, "n_orient");
    require(lambda > 0.0 && lambda * 3.0 < 255.0, "lambda");
    require(tau_clamp > 0.0 && tau_clamp < 85.0, "tau_clamp");
    require(canvas_width >= 16 && canvas_height >= 16, "canvas size");
    require(canvas_margin >= 0, "canvas_margin");
    require(raster_scale > 0.0, "raster_scale");
    require(canonical_length > 0.0, "canonical_length");
}

/// Applies one `key=value` setting; unknown keys and unparsable values throw.
inline void set_param(CostParams& p, std::string_view key, std::string_view value) {
    const std::string k = detail::trim(key);
    const std::string v = detail::trim(value);
    for (const auto& e : detail::param_table()) {
        if (e.key != k) continue;
        std::istringstream in(v);
        bool ok = false;
        std::visit(
            [&](auto member) {
                using T = std::remove_reference_t<decltype(p.*member)>;
                T parsed{};
                ok = static_cast<bool>(in >> parsed) && (in >> std::ws).eof();
                if (ok) p.*member = parsed;
            },
            e.ref);
        if (!ok) throw std::invalid_argument("bad value for " + k + ": '" + v + "'");
        return;
    }
    throw std::invalid_argument("unknown config key: " + k);
}

inline CostParams parse_params(std::istream& in, CostParams base = {}) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (detail::trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + " lacks '='");
        set_param(base, std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
    }
    base.validate();
    return base;
}

inline CostParams load_params(const std::string& path, CostParams base = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path);
    return parse_params(in, base);
}

inline std::string format_params(const CostParams& p) {
    std::ostringstream out;
    out << std::setprecision(17);
    for (const auto& e : detail::param_table()) {
        out << e.key << '=';
        std::visit([&](auto member) { out << p.*member; }, e.ref);
        out << '\n';
    }
    return out.str();
}

}  // namespace gsmatch
