#pragma once

// Small shape builders shared by the unit tests and the acceptance runner.

#include <random>
#include <vector>

#include "gsmatch/gsmatch.hpp"

namespace fixtures {

using namespace gsmatch;

/// Polygon outline with one break-point per vertex. Vertices must be
/// counter-clockwise so the indices survive Contour's orientation fix.
inline ShapeBundle polygon_bundle(const std::vector<Point>& vertices, const CostParams& p, int per_edge = 25,
                                  bool with_transforms = true) {
    Contour c = synth::polygon(vertices, per_edge);
    std::vector<BreakPoint> bps;
    for (std::size_t k = 0; k < vertices.size(); ++k)
        bps.push_back({k * static_cast<std::size_t>(per_edge), BreakKind::HighCurvature, 0.0});
    return ShapeBundle::build(std::move(c), std::move(bps), p, with_transforms);
}

/// Polygon with uneven edge sampling: edge k gets counts[k] points.
inline ShapeBundle polygon_bundle(const std::vector<Point>& vertices, const std::vector<int>& counts,
                                  const CostParams& p, bool with_transforms = true) {
    std::vector<Point> pts;
    std::vector<BreakPoint> bps;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        bps.push_back({pts.size(), BreakKind::HighCurvature, 0.0});
        const Point a = vertices[k], b = vertices[(k + 1) % vertices.size()];
        for (int s = 0; s < counts[k]; ++s) pts.push_back(a + (b - a) * (static_cast<double>(s) / counts[k]));
    }
    return ShapeBundle::build(Contour(std::move(pts)), std::move(bps), p, with_transforms);
}

/// Random star-shaped polygon, counter-clockwise by construction.
inline std::vector<Point> random_vertices(std::mt19937_64& rng, int k) {
    return synth::random_polygon(rng, k, 30.0, 60.0);
}

/// Jitters every vertex by up to `amount` in each coordinate.
inline std::vector<Point> jitter(std::vector<Point> v, std::mt19937_64& rng, double amount) {
    std::uniform_real_distribution<double> u(-amount, amount);
    for (Point& q : v) q = {q.x + u(rng), q.y + u(rng)};
    return v;
}

/// Smooth closed curve with `segments` equally spaced break-points.
inline ShapeBundle radial_bundle(int segments, const CostParams& p, double lobes = 5.0, double depth = 0.3,
                                 int points = 240, bool with_transforms = true) {
    Contour c = synth::radial([&](double t) { return 50.0 * (1.0 + depth * std::cos(lobes * t) + 0.08 * std::sin(2.0 * t)); },
                              points);
    std::vector<BreakPoint> bps;
    for (int k = 0; k < segments; ++k)
        bps.push_back({static_cast<std::size_t>(k) * static_cast<std::size_t>(points) / static_cast<std::size_t>(segments),
                       BreakKind::MaxSize, 0.0});
    return ShapeBundle::build(std::move(c), std::move(bps), p, with_transforms);
}

/// The same shape with its contour and break-points cyclically shifted so
/// that break-point `shift` becomes the first one.
inline ShapeBundle rotate_bundle(const ShapeBundle& a, std::size_t shift, const CostParams& p) {
    const auto& bps = a.breakpoints();
    const std::size_t start = bps[shift].index;
    const std::size_t n = a.contour().size();
    Contour c = a.contour().rotated(start);
    std::vector<BreakPoint> out;
    for (std::size_t k = 0; k < bps.size(); ++k) {
        BreakPoint bp = bps[(shift + k) % bps.size()];
        bp.index = (bp.index + n - start) % n;
        out.push_back(bp);
    }
    return ShapeBundle::build(std::move(c), std::move(out), p, true);
}

}  // namespace fixtures
