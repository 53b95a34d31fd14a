#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gsmatch/geometry.hpp"
#include "gsmatch/mask.hpp"

namespace gsmatch {

/// Closed, counter-clockwise polyline. Immutable after construction.
class Contour {
public:
    Contour() = default;

    /// Drops consecutive duplicates (including the wrap-around pair) and
    /// reorders clockwise input to counter-clockwise.
    explicit Contour(std::vector<Point> pts) {
        std::vector<Point> clean;
        clean.reserve(pts.size());
        for (const Point& p : pts) {
            if (!clean.empty() && distance(clean.back(), p) <= 1e-9) continue;
            clean.push_back(p);
        }
        while (clean.size() > 1 && distance(clean.front(), clean.back()) <= 1e-9) clean.pop_back();
        if (clean.size() < 3) throw std::invalid_argument("contour needs at least 3 distinct points");
        if (signed_area(clean) < 0.0) {
            // Keep the start point, reverse the traversal direction.
            std::reverse(clean.begin() + 1, clean.end());
        }
        points_ = std::move(clean);
    }

    const std::vector<Point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool closed() const { return true; }

    /// Cyclic access.
    const Point& at(long long i) const {
        const long long n = static_cast<long long>(points_.size());
        return points_[static_cast<std::size_t>(((i % n) + n) % n)];
    }

    double perimeter() const {
        double p = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i) p += distance(points_[i], points_[(i + 1) % points_.size()]);
        return p;
    }

    /// Same polygon, traversal starting at index `start`.
    Contour rotated(std::size_t start) const {
        std::vector<Point> out;
        out.reserve(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i) out.push_back(points_[(start + i) % points_.size()]);
        Contour c;
        c.points_ = std::move(out);
        return c;
    }

private:
    std::vector<Point> points_;
};

/// Cyclic distance between two indices on a ring of n points, measured in points.
inline std::size_t ring_distance(std::size_t a, std::size_t b, std::size_t n) {
    const std::size_t d = a > b ? a - b : b - a;
    return std::min(d, n - d);
}

/// Forward (counter-clockwise) gap from a to b on a ring of n points.
inline std::size_t forward_gap(std::size_t a, std::size_t b, std::size_t n) { return (b + n - a) % n; }

namespace detail {

/// Walks a closed polyline placing points at a fixed chord length.
class ChordWalker {
public:
    explicit ChordWalker(const std::vector<Point>& pts) : pts_(pts) {
        cum_.resize(pts.size() + 1, 0.0);
        for (std::size_t i = 0; i < pts.size(); ++i)
            cum_[i + 1] = cum_[i] + distance(pts[i], pts[(i + 1) % pts.size()]);
    }

    double perimeter() const { return cum_.back(); }

    /// Places `count` points starting at vertex 0. Returns the arc position of
    /// the point that would follow the last one (perimeter when it closes).
    double place(double chord, std::size_t count, std::vector<Point>* out) const {
        const std::size_t n = pts_.size();
        std::size_t seg = 0;
        double t = 0.0;
        Point cur = pts_[0];
        if (out) {
            out->clear();
            out->push_back(cur);
        }
        for (std::size_t k = 0; k < count; ++k) {
            bool found = false;
            while (seg < n) {
                const Point a = seg_point(seg, t);
                const Point b = pts_[(seg + 1) % n];
                // Segment start already outside the circle: the exit was its start.
                if (t == 0.0 && distance(a, cur) >= chord) {
                    cur = a;
                    found = true;
                    break;
                }
                const Point d = b - pts_[seg];
                const Point f = pts_[seg] - cur;
                const double qa = dot(d, d);
                const double qb = 2.0 * dot(f, d);
                const double qc = dot(f, f) - chord * chord;
                const double disc = qb * qb - 4.0 * qa * qc;
                if (disc >= 0.0 && qa > 0.0) {
                    const double root = (-qb + std::sqrt(disc)) / (2.0 * qa);
                    if (root >= t && root <= 1.0) {
                        t = root;
                        cur = seg_point(seg, t);
                        found = true;
                        break;
                    }
                }
                ++seg;
                t = 0.0;
            }
            if (!found) return std::numeric_limits<double>::infinity();
            if (out && k + 1 < count) out->push_back(cur);
        }
        return cum_[seg] + t * (cum_[seg + 1] - cum_[seg]);
    }

private:
    Point seg_point(std::size_t seg, double t) const {
        const Point a = pts_[seg];
        const Point b = pts_[(seg + 1) % pts_.size()];
        return a + (b - a) * t;
    }

    const std::vector<Point>& pts_;
    std::vector<double> cum_;
};

}  // namespace detail

/// Resamples to n points with equal consecutive chord lengths (including the
/// closing chord), keeping the start point and orientation. An equal-chord
/// polygon is a fixed point, so resampling twice at the same n is a no-op.
inline Contour resample(const Contour& c, std::size_t n) {
    if (n < 3) throw std::invalid_argument("resample needs n >= 3");
    const detail::ChordWalker walker(c.points());
    const double perim = walker.perimeter();
    double lo = 0.0;
    double hi = perim / static_cast<double>(n) * 1.000001;
    // The n-th placement closes the loop when it lands back on the start.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double end = walker.place(mid, n, nullptr);
        if (end < perim) lo = mid;
        else hi = mid;
        if (hi - lo <= 1e-15 * perim) break;
    }
    std::vector<Point> out;
    walker.place(0.5 * (lo + hi), n, &out);
    // Fall back to plain arc-length sampling if the chord walk cannot close
    // (can happen on self-touching outlines).
    if (out.size() != n) {
        out.clear();
        const auto& pts = c.points();
        double acc = 0.0;
        std::size_t seg = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const double target = perim * static_cast<double>(k) / static_cast<double>(n);
            while (seg < pts.size()) {
                const double len = distance(pts[seg], pts[(seg + 1) % pts.size()]);
                if (acc + len >= target) {
                    const double t = len > 0.0 ? (target - acc) / len : 0.0;
                    out.push_back(pts[seg] + (pts[(seg + 1) % pts.size()] - pts[seg]) * t);
                    break;
                }
                acc += len;
                ++seg;
            }
        }
    }
    return Contour(std::move(out));
}

enum class ContourFormat { PointList, Graymap };

inline Contour read_point_list(std::istream& in) {
    std::vector<Point> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        Point p;
        if (!(ls >> p.x >> p.y)) throw std::runtime_error("malformed point on line " + std::to_string(lineno));
        pts.push_back(p);
    }
    if (pts.size() < 3) throw std::runtime_error("fewer than 3 boundary points");
    return Contour(std::move(pts));
}

inline void write_point_list(std::ostream& out, const Contour& c) {
    out << std::setprecision(17);
    for (const Point& p : c.points()) out << p.x << ' ' << p.y << '\n';
}

/// Outer boundary of the largest foreground component as a contour.
inline Contour contour_from_mask(const Mask& mask) {
    if (mask.count() == 0) throw std::runtime_error("empty mask");
    const Mask largest = largest_component(mask);
    auto boundary = trace_outer_boundary(largest);
    std::vector<Point> pts;
    pts.reserve(boundary.size());
    for (const auto& [x, y] : boundary) pts.push_back({static_cast<double>(x), static_cast<double>(y)});
    if (pts.size() < 3) throw std::runtime_error("fewer than 3 boundary points");
    return Contour(std::move(pts));
}

inline Contour load_contour(const std::string& path, ContourFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    if (format == ContourFormat::Graymap) return contour_from_mask(read_pgm(in));
    return read_point_list(in);
}

/// Picks the format from the extension: .pgm is a graymap, anything else a point list.
inline Contour load_contour(const std::string& path) {
    const bool pgm = path.size() >= 4 && (path.ends_with(".pgm") || path.ends_with(".PGM"));
    return load_contour(path, pgm ? ContourFormat::Graymap : ContourFormat::PointList);
}

}  // namespace gsmatch
