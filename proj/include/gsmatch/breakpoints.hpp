#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsmatch/contour.hpp"
#include "gsmatch/params.hpp"

namespace gsmatch {

struct SharpnessParams {
    int ns = 6;  // neighbourhood half-width in points
    double sigma = 2.0;
    double threshold = 20.0;  // degrees
    int nms_radius = 6;

    static SharpnessParams from(const CostParams& p, std::size_t contour_points) {
        SharpnessParams s;
        s.ns = p.neighborhood(contour_points);
        s.sigma = s.ns * p.sigma_ratio;
        s.threshold = p.sharpness_threshold;
        s.nms_radius = std::max(1, static_cast<int>(std::lround(s.ns * p.nms_factor)));
        return s;
    }

    void validate() const {
        if (ns < 1 || sigma <= 0.0 || threshold < 0.0 || nms_radius < 0)
            throw std::invalid_argument("invalid sharpness parameters");
    }
};

enum class BreakKind { HighCurvature, Opposite, MaxSize };

inline const char* to_string(BreakKind k) {
    switch (k) {
        case BreakKind::HighCurvature: return "high_curvature";
        case BreakKind::Opposite: return "opposite";
        case BreakKind::MaxSize: return "max_size";
    }
    return "?";
}

inline BreakKind parse_break_kind(const std::string& s) {
    if (s == "high_curvature") return BreakKind::HighCurvature;
    if (s == "opposite") return BreakKind::Opposite;
    if (s == "max_size") return BreakKind::MaxSize;
    throw std::invalid_argument("unknown break-point kind: " + s);
}

struct BreakPoint {
    std::size_t index = 0;
    BreakKind kind = BreakKind::HighCurvature;
    double sharpness = 0.0;

    friend bool operator==(const BreakPoint&, const BreakPoint&) = default;
};

/// Contour portion from one break-point up to (not including) the next.
struct Segment {
    std::size_t start_index = 0;  // contour index of the starting break-point
    std::size_t end_index = 0;    // contour index of the next break-point
    std::size_t point_count = 0;
    double weight = 0.0;
};

/// Normalised Gaussian pair weights w_1..w_ns centred on ns/2.
inline std::vector<double> sharpness_weights(const SharpnessParams& p) {
    std::vector<double> w(static_cast<std::size_t>(p.ns));
    double total = 0.0;
    const double centre = 0.5 * p.ns;
    for (int j = 1; j <= p.ns; ++j) {
        const double d = j - centre;
        w[static_cast<std::size_t>(j - 1)] = std::exp(-d * d / (2.0 * p.sigma * p.sigma));
        total += w[static_cast<std::size_t>(j - 1)];
    }
    for (double& x : w) x /= total;
    return w;
}

/// Gaussian-weighted sum of deviations from straightness at contour point i.
inline double angle_sharpness(const Contour& c, std::size_t i, const SharpnessParams& p) {
    p.validate();
    const auto w = sharpness_weights(p);
    const long long ii = static_cast<long long>(i);
    double s = 0.0;
    for (int j = 1; j <= p.ns; ++j) {
        const double a = angle_at(c.at(ii - j), c.at(ii), c.at(ii + j));
        s += w[static_cast<std::size_t>(j - 1)] * (180.0 - a);
    }
    return s;
}

inline std::vector<double> sharpness_profile(const Contour& c, const SharpnessParams& p) {
    std::vector<double> s(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) s[i] = angle_sharpness(c, i, p);
    return s;
}

namespace detail {

inline void sort_unique(std::vector<BreakPoint>& bps) {
    std::stable_sort(bps.begin(), bps.end(), [](const BreakPoint& a, const BreakPoint& b) { return a.index < b.index; });
    bps.erase(std::unique(bps.begin(), bps.end(), [](const BreakPoint& a, const BreakPoint& b) { return a.index == b.index; }),
              bps.end());
}

}  // namespace detail

/// Cyclic local maxima of the sharpness above the threshold, with
/// non-maximum suppression inside nms_radius (ties go to the lower index).
inline std::vector<BreakPoint> detect_high_curvature(const Contour& c, const SharpnessParams& p) {
    const auto s = sharpness_profile(c, p);
    const std::size_t n = s.size();
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < n; ++i) {
        const double prev = s[(i + n - 1) % n];
        const double next = s[(i + 1) % n];
        // Plateaus keep their first point.
        if (s[i] > p.threshold && s[i] > prev && s[i] >= next) cand.push_back(i);
    }
    std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
        return s[a] != s[b] ? s[a] > s[b] : a < b;
    });
    std::vector<BreakPoint> kept;
    for (std::size_t i : cand) {
        const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const BreakPoint& k) {
            return ring_distance(k.index, i, n) <= static_cast<std::size_t>(p.nms_radius);
        });
        if (!suppressed) kept.push_back({i, BreakKind::HighCurvature, s[i]});
    }
    detail::sort_unique(kept);
    return kept;
}

/// True when the contour turns clockwise at i (a reflex vertex of a
/// counter-clockwise outline), judged over a span of `span` points.
inline bool is_reflex(const Contour& c, std::size_t i, int span) {
    const long long ii = static_cast<long long>(i);
    const Point a = c.at(ii - span), b = c.at(ii), d = c.at(ii + span);
    return cross(b - a, d - b) < 0.0;
}

inline std::vector<BreakPoint> concave_points(const Contour& c, const std::vector<BreakPoint>& high_curvature, int span) {
    std::vector<BreakPoint> out;
    for (const auto& bp : high_curvature)
        if (is_reflex(c, bp.index, span)) out.push_back(bp);
    return out;
}

struct OppositeParams {
    double search_fraction = 0.20;
    double gd_min_fraction = 0.05;
    double ed_ratio = 0.5;
    int snap_radius = 6;

    static OppositeParams from(const CostParams& p, std::size_t contour_points) {
        OppositeParams o;
        o.search_fraction = p.opposite_search_fraction;
        o.gd_min_fraction = p.opposite_gd_min_fraction;
        o.ed_ratio = p.opposite_ed_ratio;
        o.snap_radius = SharpnessParams::from(p, contour_points).nms_radius;
        return o;
    }
};

namespace detail {

/// Arc length along the contour between indices a and b, taking the shorter way.
inline double geodesic_length(const Contour& c, std::size_t a, std::size_t b) {
    const std::size_t n = c.size();
    const std::size_t fwd = forward_gap(a, b, n);
    const bool forward = fwd <= n - fwd;
    const std::size_t steps = forward ? fwd : n - fwd;
    double len = 0.0;
    long long cur = static_cast<long long>(a);
    for (std::size_t k = 0; k < steps; ++k) {
        const long long nxt = forward ? cur + 1 : cur - 1;
        len += distance(c.at(cur), c.at(nxt));
        cur = nxt;
    }
    return len;
}

}  // namespace detail

/// For each concave point, the contour point across the pinch: a local minimum
/// of Euclidean distance within the geodesic search window whose crossing is
/// short relative to the arc it cuts off. Snaps to a nearby high-curvature
/// point when one exists.
inline std::vector<BreakPoint> detect_opposite_points(const Contour& c, const std::vector<BreakPoint>& concave,
                                                      const std::vector<BreakPoint>& high_curvature,
                                                      const OppositeParams& op) {
    const std::size_t n = c.size();
    const auto max_gd = static_cast<std::size_t>(std::floor(op.search_fraction * static_cast<double>(n)));
    const auto min_gd = static_cast<std::size_t>(std::ceil(op.gd_min_fraction * static_cast<double>(n)));
    std::vector<BreakPoint> out;
    for (const auto& p : concave) {
        std::optional<std::size_t> best;
        double best_ed = 0.0;
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t gd = ring_distance(p.index, q, n);
            if (gd < min_gd || gd > max_gd) continue;
            const Point pp = c.points()[p.index];
            const double ed = distance(pp, c.points()[q]);
            const double ed_prev = distance(pp, c.at(static_cast<long long>(q) - 1));
            const double ed_next = distance(pp, c.at(static_cast<long long>(q) + 1));
            if (ed > ed_prev || ed > ed_next) continue;
            if (ed > op.ed_ratio * detail::geodesic_length(c, p.index, q)) continue;
            if (!best || ed < best_ed) {
                best = q;
                best_ed = ed;
            }
        }
        if (!best) continue;
        BreakPoint bp{*best, BreakKind::Opposite, 0.0};
        // Prefer a high-curvature point in the neighbourhood of the candidate.
        std::size_t snap_dist = static_cast<std::size_t>(op.snap_radius) + 1;
        for (const auto& hc : high_curvature) {
            const std::size_t d = ring_distance(hc.index, *best, n);
            if (d <= static_cast<std::size_t>(op.snap_radius) && d < snap_dist) {
                snap_dist = d;
                bp = hc;
            }
        }
        out.push_back(bp);
    }
    detail::sort_unique(out);
    return out;
}

/// Inserts equally spaced max-size points so no gap between consecutive
/// break-points exceeds d_k * total points. Existing points are kept as-is.
inline std::vector<BreakPoint> insert_max_size_points(const Contour& c, std::vector<BreakPoint> bps, double d_k) {
    if (d_k <= 0.0 || d_k > 1.0) throw std::invalid_argument("d_k must be in (0, 1]");
    const std::size_t n = c.size();
    const auto max_gap = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(d_k * static_cast<double>(n) + 1e-9)));
    detail::sort_unique(bps);
    std::vector<BreakPoint> out;
    if (bps.empty()) {
        const std::size_t pieces = (n + max_gap - 1) / max_gap;
        for (std::size_t t = 0; t < pieces; ++t) out.push_back({n * t / pieces, BreakKind::MaxSize, 0.0});
        detail::sort_unique(out);
        return out;
    }
    for (std::size_t k = 0; k < bps.size(); ++k) {
        const std::size_t a = bps[k].index;
        const std::size_t b = bps[(k + 1) % bps.size()].index;
        std::size_t gap = forward_gap(a, b, n);
        if (gap == 0) gap = n;  // single break-point: the whole ring
        out.push_back(bps[k]);
        const std::size_t pieces = (gap + max_gap - 1) / max_gap;
        for (std::size_t t = 1; t < pieces; ++t) out.push_back({(a + gap * t / pieces) % n, BreakKind::MaxSize, 0.0});
    }
    detail::sort_unique(out);
    return out;
}

/// Cyclic tiling: segment k runs from bps[k] to bps[k+1].
inline std::vector<Segment> segment_contour(const Contour& c, const std::vector<BreakPoint>& bps) {
    if (bps.size() < 2) throw std::invalid_argument("insufficient break-points");
    const std::size_t n = c.size();
    std::vector<Segment> segs;
    segs.reserve(bps.size());
    for (std::size_t k = 0; k < bps.size(); ++k) {
        if (k > 0 && bps[k].index <= bps[k - 1].index) throw std::invalid_argument("break-points must be sorted and unique");
        if (bps[k].index >= n) throw std::invalid_argument("break-point index out of range");
        Segment s;
        s.start_index = bps[k].index;
        s.end_index = bps[(k + 1) % bps.size()].index;
        s.point_count = forward_gap(s.start_index, s.end_index, n);
        s.weight = static_cast<double>(s.point_count) / static_cast<double>(n);
        segs.push_back(s);
    }
    return segs;
}

/// Full break-point pipeline on a (resampled) contour.
inline std::vector<BreakPoint> detect_break_points(const Contour& c, const CostParams& p) {
    const auto sp = SharpnessParams::from(p, c.size());
    const auto hc = detect_high_curvature(c, sp);
    const auto concave = concave_points(c, hc, sp.ns);
    const auto opposite = detect_opposite_points(c, concave, hc, OppositeParams::from(p, c.size()));
    std::vector<BreakPoint> all = hc;
    all.insert(all.end(), opposite.begin(), opposite.end());
    detail::sort_unique(all);  // stable: high-curvature entries win on duplicate indices
    return insert_max_size_points(c, std::move(all), p.d_k);
}

/// Sidecar text format: one "idx kind sharpness" line per break-point.
inline void write_break_points(std::ostream& out, const std::vector<BreakPoint>& bps) {
    out << std::setprecision(17);
    for (const auto& bp : bps) out << bp.index << ' ' << to_string(bp.kind) << ' ' << bp.sharpness << '\n';
}

inline std::vector<BreakPoint> read_break_points(std::istream& in) {
    std::vector<BreakPoint> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        BreakPoint bp;
        std::string kind;
        if (!(ls >> bp.index >> kind >> bp.sharpness)) throw std::runtime_error("malformed break-point line: " + line);
        bp.kind = parse_break_kind(kind);
        out.push_back(bp);
    }
    return out;
}

}  // namespace gsmatch
