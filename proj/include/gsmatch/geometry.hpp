#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace gsmatch {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
    friend constexpr Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
    friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

/// Unsigned angle in degrees between two vectors; throws on a zero vector.
inline double vector_angle(Point u, Point v) {
    const double nu = norm(u);
    const double nv = norm(v);
    if (nu < 1e-12 || nv < 1e-12) throw std::invalid_argument("degenerate angle");
    return std::atan2(std::abs(u.x * v.y - u.y * v.x), dot(u, v)) * kDegPerRad;
}

/// Interior angle in degrees at vertex b of the path a -> b -> c, in [0, 180].
inline double angle_at(Point a, Point b, Point c) { return vector_angle(a - b, c - b); }

/// Shoelace signed area; positive for counter-clockwise polygons.
inline double signed_area(std::span<const Point> pts) {
    double s = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
    return 0.5 * s;
}

inline Point centroid(std::span<const Point> pts) {
    Point c;
    for (const Point& p : pts) c = c + p;
    return pts.empty() ? c : c * (1.0 / static_cast<double>(pts.size()));
}

/// 2x2 matrix stored row-major; used for affine maps and moment matrices.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    constexpr Point apply(Point p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
    constexpr double det() const { return a * d - b * c; }
    friend constexpr Mat2 operator*(const Mat2& l, const Mat2& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
    static Mat2 rotation(double radians) {
        const double cs = std::cos(radians), sn = std::sin(radians);
        return {cs, -sn, sn, cs};
    }
    static constexpr Mat2 diag(double x, double y) { return {x, 0.0, 0.0, y}; }
};

/// Eigen-decomposition of a symmetric 2x2 matrix [[a, b], [b, d]].
/// Eigenvalues are returned in ascending order with unit eigenvectors.
struct SymEigen2 {
    double lambda_min = 0.0, lambda_max = 0.0;
    Point v_min, v_max;
};

inline SymEigen2 sym_eigen(double a, double b, double d) {
    const double mean = 0.5 * (a + d);
    const double half_diff = 0.5 * (a - d);
    const double r = std::hypot(half_diff, b);
    SymEigen2 e;
    e.lambda_max = mean + r;
    e.lambda_min = mean - r;
    // Angle of the major axis.
    const double phi = 0.5 * std::atan2(2.0 * b, a - d);
    e.v_max = {std::cos(phi), std::sin(phi)};
    e.v_min = {-std::sin(phi), std::cos(phi)};
    return e;
}

inline std::vector<Point> transform(std::span<const Point> pts, const Mat2& m, Point t = {}) {
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const Point& p : pts) out.push_back(m.apply(p) + t);
    return out;
}

}  // namespace gsmatch
