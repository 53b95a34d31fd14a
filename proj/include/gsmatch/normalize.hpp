#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "gsmatch/geometry.hpp"
#include "gsmatch/groups.hpp"
#include "gsmatch/params.hpp"

namespace gsmatch {

struct Affine2 {
    Mat2 m;
    Point t;

    Point apply(Point p) const { return m.apply(p) + t; }
    /// this ∘ other
    Affine2 after(const Affine2& other) const { return {m * other.m, m.apply(other.t) + t}; }
};

/// Centred second-moment matrix Σ (x - x̄)(x - x̄)^T.
struct MomentMatrix {
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    Point mean;

    SymEigen2 eigen() const { return sym_eigen(sxx, sxy, syy); }
    bool singular() const {
        const auto e = eigen();
        return e.lambda_max <= 0.0 || e.lambda_min <= 1e-10 * e.lambda_max;
    }
    /// Symmetric inverse square root M^{-1/2}.
    Mat2 inverse_sqrt() const {
        const auto e = eigen();
        const double a = 1.0 / std::sqrt(e.lambda_min);
        const double b = 1.0 / std::sqrt(e.lambda_max);
        const Point u = e.v_min, v = e.v_max;
        return {a * u.x * u.x + b * v.x * v.x, a * u.x * u.y + b * v.x * v.y,
                a * u.x * u.y + b * v.x * v.y, a * u.y * u.y + b * v.y * v.y};
    }
};

inline MomentMatrix moment_matrix(std::span<const Point> pts) {
    if (pts.size() < 3) throw std::invalid_argument("moment matrix needs at least 3 points");
    MomentMatrix mm;
    mm.mean = centroid(pts);
    for (const Point& p : pts) {
        const Point d = p - mm.mean;
        mm.sxx += d.x * d.x;
        mm.sxy += d.x * d.y;
        mm.syy += d.y * d.y;
    }
    return mm;
}

/// Whitening map x -> M^{-1/2} (x - x̄); output moments are the identity.
inline Affine2 whitening_transform(std::span<const Point> pts) {
    const auto mm = moment_matrix(pts);
    if (mm.singular()) throw std::domain_error("degenerate GS");
    const Mat2 a = mm.inverse_sqrt();
    return {a, a.apply(mm.mean) * -1.0};
}

inline std::vector<Point> affine_normalize(std::span<const Point> pts) {
    const Affine2 w = whitening_transform(pts);
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const Point& p : pts) out.push_back(w.apply(p));
    return out;
}

struct NormalizedGS {
    std::vector<Point> points;
    Affine2 transform;  // original frame -> canonical frame
    bool is_closed = false;
    bool low_rank = false;  // collinear input, only rotation-normalised
};

/// Similarity (rotation + uniform scale + translation) that sends `from` to
/// `to_point` and `pivot` to `to_pivot`.
inline Affine2 similarity_two_point(Point pivot, Point from, Point to_pivot, Point to_point) {
    const Point d = from - pivot;
    const Point e = to_point - to_pivot;
    const double dd = dot(d, d);
    if (dd < 1e-24) throw std::domain_error("coincident anchor points");
    // Complex ratio e / d.
    const double kr = (e.x * d.x + e.y * d.y) / dd;
    const double ki = (e.y * d.x - e.x * d.y) / dd;
    const Mat2 m{kr, -ki, ki, kr};
    return {m, to_pivot - m.apply(pivot)};
}

/// Fixes rotation and scale: open runs map start -> (0,0), end -> (L,0);
/// closed runs map centroid -> (0,0), start -> (L/2,0).
inline NormalizedGS rotation_normalize(std::span<const Point> pts, bool is_closed, double canonical_length = 100.0) {
    if (pts.size() < 2) throw std::invalid_argument("rotation normalisation needs at least 2 points");
    NormalizedGS out;
    out.is_closed = is_closed;
    if (is_closed) {
        const Point c = centroid(pts);
        if (distance(c, pts.front()) < 1e-12) throw std::domain_error("start point coincides with centroid");
        out.transform = similarity_two_point(c, pts.front(), {0.0, 0.0}, {0.5 * canonical_length, 0.0});
    } else {
        if (distance(pts.front(), pts.back()) < 1e-12) throw std::domain_error("open GS start and end coincide");
        out.transform = similarity_two_point(pts.front(), pts.back(), {0.0, 0.0}, {canonical_length, 0.0});
    }
    out.points.reserve(pts.size());
    for (const Point& p : pts) out.points.push_back(out.transform.apply(p));
    return out;
}

/// Full per-group normalisation. Collinear groups skip whitening.
inline NormalizedGS normalize_points(std::span<const Point> pts, bool is_closed, double canonical_length) {
    const auto mm = moment_matrix(pts);
    if (mm.singular()) {
        auto out = rotation_normalize(pts, is_closed, canonical_length);
        out.low_rank = true;
        return out;
    }
    const Affine2 w = whitening_transform(pts);
    std::vector<Point> white;
    white.reserve(pts.size());
    for (const Point& p : pts) white.push_back(w.apply(p));
    auto out = rotation_normalize(white, is_closed, canonical_length);
    out.transform = out.transform.after(w);
    return out;
}

inline NormalizedGS normalize_gs(const GroupOfSegments& gs, const CostParams& p) {
    if (gs.points.size() < 3) {
        auto out = rotation_normalize(gs.points, gs.is_closed, p.canonical_length);
        out.low_rank = true;
        return out;
    }
    return normalize_points(gs.points, gs.is_closed, p.canonical_length);
}

}  // namespace gsmatch
