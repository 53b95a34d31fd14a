#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "gsmatch/breakpoints.hpp"
#include "gsmatch/contour.hpp"
#include "gsmatch/mask.hpp"
#include "gsmatch/params.hpp"

namespace gsmatch {

struct OcclusionResult {
    Contour contour;
    Point chord_a, chord_b;  // endpoints of the closing chord (equal when nothing was removed)
    std::size_t removed_start = 0;  // first removed segment, indexed as in ShapeBundle::build(input)
    std::size_t removed_segments = 0;
    std::size_t total_segments = 0;
    double k_percent = 0.0;
};

/// Removes a random run of consecutive segments covering k% of the segment
/// count (k uniform in [5, 15]) and closes the gap with a straight chord.
/// `k_override` fixes k; 0 returns the input unchanged.
inline OcclusionResult occlude(const Contour& c, std::uint64_t seed, const CostParams& p,
                               std::optional<double> k_override = std::nullopt) {
    std::mt19937_64 rng(seed);
    const double k = k_override ? *k_override : std::uniform_real_distribution<double>(5.0, 15.0)(rng);
    OcclusionResult res;
    res.k_percent = k;
    if (k <= 0.0) {
        res.contour = c;
        res.chord_a = res.chord_b = c.points().front();
        return res;
    }
    const Contour r = resample(c, static_cast<std::size_t>(p.sample_count));
    const auto segs = segment_contour(r, detect_break_points(r, p));
    const std::size_t m = segs.size();
    res.total_segments = m;
    const double md = static_cast<double>(m);
    const auto lo = static_cast<long long>(std::ceil(0.05 * md - 1e-9));
    const auto hi = static_cast<long long>(std::floor(0.15 * md + 1e-9));
    if (hi < std::max(1LL, lo)) throw std::invalid_argument("too few segments to occlude 5-15%");
    const long long want = std::clamp(std::llround(k / 100.0 * md), std::max(1LL, lo), hi);
    const auto count = static_cast<std::size_t>(want);
    if (m - count < 3) throw std::invalid_argument("removal would leave < 3 segments");

    const std::size_t start = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
    const std::size_t from = segs[(start + count - 1) % m].end_index;  // first kept point
    const std::size_t to = segs[start].start_index;                    // last kept point
    const std::size_t n = r.size();
    std::vector<Point> kept;
    for (std::size_t i = from;; i = (i + 1) % n) {
        kept.push_back(r.points()[i]);
        if (i == to) break;
    }
    res.contour = Contour(std::move(kept));
    res.chord_a = r.points()[to];
    res.chord_b = r.points()[from];
    res.removed_start = start;
    res.removed_segments = count;
    return res;
}

/// Even-odd scanline fill of a polygon given in pixel coordinates (pixel
/// centres at integer positions).
inline void fill_polygon(Mask& mask, std::span<const Point> poly) {
    const std::size_t n = poly.size();
    std::vector<double> xs;
    for (int y = 0; y < mask.height; ++y) {
        const double yc = y;
        xs.clear();
        for (std::size_t k = 0; k < n; ++k) {
            const Point a = poly[k], b = poly[(k + 1) % n];
            if ((a.y <= yc) == (b.y <= yc)) continue;
            xs.push_back(a.x + (yc - a.y) / (b.y - a.y) * (b.x - a.x));
        }
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            const int x0 = std::max(0, static_cast<int>(std::ceil(xs[k])));
            const int x1 = std::min(mask.width - 1, static_cast<int>(std::floor(xs[k + 1])));
            for (int x = x0; x <= x1; ++x) mask.set(x, y);
        }
    }
}

struct MergeOptions {
    double overlap_min = 0.05;  // overlap area as a fraction of the smaller shape
    double overlap_max = 0.15;
    int max_retries = 20;
    double pixels_per_rms = 40.0;   // raster resolution for the union
    std::optional<Point> force_offset;  // test hook: translation of b's centroid relative to a's
};

namespace detail {

inline double rms_radius(std::span<const Point> pts, Point c) {
    double s = 0.0;
    for (const Point& p : pts) s += dot(p - c, p - c);
    return std::sqrt(s / static_cast<double>(pts.size()));
}

struct MergeCanvas {
    double scale = 1.0;
    Point origin;  // world position of pixel (0, 0)
    int width = 0, height = 0;

    Point to_pixel(Point p) const { return (p - origin) * scale; }
    Point to_world(Point q) const { return q * (1.0 / scale) + origin; }
};

inline Mask raster(const MergeCanvas& cv, std::span<const Point> world) {
    std::vector<Point> px;
    px.reserve(world.size());
    for (const Point& p : world) px.push_back(cv.to_pixel(p));
    Mask m(cv.width, cv.height);
    fill_polygon(m, px);
    return m;
}

}  // namespace detail

/// Union outline of a and a rescaled copy of b placed so the two overlap
/// along a short boundary section. The result is in a's coordinate frame,
/// sampled at the union raster resolution.
inline Contour merge_shapes(const Contour& a, const Contour& b, std::uint64_t seed, const MergeOptions& opt = {}) {
    std::mt19937_64 rng(seed);
    const Point ca = centroid(a.points());
    const Point cb = centroid(b.points());
    const double ra = detail::rms_radius(a.points(), ca);
    const double rb = detail::rms_radius(b.points(), cb);
    std::vector<Point> b0;  // b scaled to a's RMS radius, centred at the origin
    b0.reserve(b.size());
    for (const Point& p : b.points()) b0.push_back((p - cb) * (ra / rb));

    double max_extent = 0.0;
    for (const Point& p : a.points()) max_extent = std::max(max_extent, norm(p - ca));
    for (const Point& p : b0) max_extent = std::max(max_extent, norm(p));

    detail::MergeCanvas cv;
    cv.scale = opt.pixels_per_rms / ra;
    const double half = 2.0 * max_extent + 4.0 / cv.scale;
    cv.origin = {ca.x - half, ca.y - half};
    cv.width = cv.height = static_cast<int>(std::ceil(2.0 * half * cv.scale)) + 1;

    const Mask ma = detail::raster(cv, a.points());
    const double area_a = static_cast<double>(ma.count());
    auto place_b = [&](Point offset) {
        std::vector<Point> w;
        w.reserve(b0.size());
        for (const Point& p : b0) w.push_back(ca + offset + p);
        return detail::raster(cv, w);
    };
    auto overlap_of = [&](const Mask& mb) {
        std::size_t both = 0;
        for (std::size_t k = 0; k < ma.cells.size(); ++k) both += ma.cells[k] && mb.cells[k];
        return static_cast<double>(both);
    };
    auto finish = [&](const Mask& mb) -> std::optional<Contour> {
        if (overlap_of(mb) == 0.0) return std::nullopt;  // disjoint, or b fell off the canvas
        Mask u = ma;
        for (std::size_t k = 0; k < u.cells.size(); ++k) u.cells[k] = u.cells[k] || mb.cells[k];
        if (component_count(u) != 1) return std::nullopt;
        auto boundary = trace_outer_boundary(u);
        std::vector<Point> pts;
        pts.reserve(boundary.size());
        for (const auto& [x, y] : boundary) pts.push_back(cv.to_world({static_cast<double>(x), static_cast<double>(y)}));
        return Contour(std::move(pts));
    };

    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> frac(opt.overlap_min, opt.overlap_max);
    if (opt.force_offset) {
        if (auto c = finish(place_b(*opt.force_offset))) return *c;
        throw std::runtime_error("merge failed: shapes do not overlap in one piece");
    }
    for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
        const double theta = angle(rng);
        const Point dir{std::cos(theta), std::sin(theta)};
        const double target = frac(rng);
        // Overlap shrinks as b moves out along dir; bisect on the distance.
        double lo = 0.0, hi = 2.0 * max_extent;
        for (int it = 0; it < 30; ++it) {
            const double mid = 0.5 * (lo + hi);
            const Mask mb = place_b(dir * mid);
            const double f = overlap_of(mb) / std::min(area_a, static_cast<double>(mb.count()));
            (f > target ? lo : hi) = mid;
        }
        if (auto c = finish(place_b(dir * hi))) return *c;
    }
    throw std::runtime_error("merge failed: union not simply connected");
}

}  // namespace gsmatch
