#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsmatch/contour.hpp"
#include "gsmatch/geometry.hpp"

// Generated test shapes: a few polygonal class templates plus a deformation
// model for drawing intra-class instances.

namespace gsmatch::synth {

/// Densely sampled polygon outline, `per_edge` points per side.
inline Contour polygon(const std::vector<Point>& vertices, int per_edge = 24) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon needs 3 vertices");
    std::vector<Point> pts;
    pts.reserve(vertices.size() * static_cast<std::size_t>(per_edge));
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        const Point a = vertices[k], b = vertices[(k + 1) % vertices.size()];
        for (int s = 0; s < per_edge; ++s) pts.push_back(a + (b - a) * (static_cast<double>(s) / per_edge));
    }
    return Contour(std::move(pts));
}

inline Contour circle(double r, int n = 200) {
    std::vector<Point> pts;
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * k / n;
        pts.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return Contour(std::move(pts));
}

inline std::vector<Point> star_vertices(int spikes, double r_out, double r_in, double phase = 0.0) {
    std::vector<Point> v;
    for (int k = 0; k < 2 * spikes; ++k) {
        const double t = phase + std::numbers::pi * k / spikes;
        const double r = k % 2 == 0 ? r_out : r_in;
        v.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return v;
}

inline std::vector<Point> square_vertices(double side) {
    const double h = side / 2.0;
    return {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
}

inline std::vector<Point> cross_vertices(double arm, double width) {
    const double a = arm, w = width / 2.0;
    return {{w, -a}, {w, -w}, {a, -w}, {a, w}, {w, w}, {w, a}, {-w, a}, {-w, w}, {-a, w}, {-a, -w}, {-w, -w}, {-w, -a}};
}

/// House with a chimney on one side: no rotational or mirror symmetry.
inline std::vector<Point> house_vertices(double size) {
    const double s = size;
    return {{-s, -s}, {s, -s}, {s, 0.3 * s}, {0.45 * s, 0.85 * s}, {0.45 * s, 1.2 * s}, {0.15 * s, 1.2 * s},
            {0.15 * s, 1.1 * s}, {-s, 0.3 * s}};
}

/// Star-shaped random polygon around the origin; angles are jittered so
/// the result has no symmetry.
inline std::vector<Point> random_polygon(std::mt19937_64& rng, int k, double r_min, double r_max) {
    std::uniform_real_distribution<double> radius(r_min, r_max);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    std::vector<Point> v;
    for (int i = 0; i < k; ++i) {
        const double t = 2.0 * std::numbers::pi * (i + jitter(rng)) / k;
        const double r = radius(rng);
        v.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return v;
}

struct Deformation {
    bool random_rotation = true;
    double anisotropy = 0.15;  // max relative stretch along a random axis
    double shear = 0.10;
    double noise = 0.015;      // smooth radial wobble, fraction of RMS radius
    int noise_harmonics = 4;
};

/// Near-identity affine map plus low-frequency radial noise. Orientation is preserved.
inline Contour deform(const Contour& c, std::mt19937_64& rng, const Deformation& d = {}) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const Point ctr = centroid(c.points());
    double rms = 0.0;
    for (const Point& p : c.points()) rms += dot(p - ctr, p - ctr);
    rms = std::sqrt(rms / static_cast<double>(c.size()));

    std::vector<double> amp, phase;
    for (int h = 2; h < 2 + d.noise_harmonics; ++h) {
        amp.push_back(d.noise * rms * unit(rng) / std::sqrt(static_cast<double>(h)));
        phase.push_back(angle(rng));
    }
    const double axis = angle(rng);
    const double stretch = 1.0 + d.anisotropy * unit(rng);
    const double shear = d.shear * unit(rng);
    const double rot = d.random_rotation ? angle(rng) : 0.0;
    const Mat2 a = Mat2::rotation(rot) * Mat2{1.0, shear, 0.0, 1.0} * Mat2::rotation(axis) * Mat2::diag(stretch, 1.0) *
                   Mat2::rotation(-axis);

    std::vector<Point> out;
    out.reserve(c.size());
    for (const Point& p : c.points()) {
        Point q = p - ctr;
        const double r = norm(q);
        if (r > 0.0) {
            const double t = std::atan2(q.y, q.x);
            double dr = 0.0;
            for (std::size_t h = 0; h < amp.size(); ++h) dr += amp[h] * std::cos((h + 2.0) * t + phase[h]);
            q = q * ((r + dr) / r);
        }
        out.push_back(a.apply(q));
    }
    return Contour(std::move(out));
}

/// Closed curve r(t) around the origin, sampled at n uniform angles.
template <class RadiusFn>
inline Contour radial(RadiusFn r, int n = 240) {
    std::vector<Point> pts;
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * k / n;
        const double rr = r(t);
        pts.push_back({rr * std::cos(t), rr * std::sin(t)});
    }
    return Contour(std::move(pts));
}

inline void append_arc(std::vector<Point>& out, Point c, double r, double t0, double t1, int steps) {
    for (int s = 0; s < steps; ++s) {
        const double t = t0 + (t1 - t0) * s / steps;
        out.push_back({c.x + r * std::cos(t), c.y + r * std::sin(t)});
    }
}

inline void append_line(std::vector<Point>& out, Point a, Point b, int steps) {
    for (int s = 0; s < steps; ++s) out.push_back(a + (b - a) * (static_cast<double>(s) / steps));
}

/// Two discs joined by a bar.
inline Contour bone(double half_length = 45.0, double r = 22.0, double bar = 12.0) {
    const double phi = std::asin(bar / r);
    const double pi = std::numbers::pi;
    const double x_in = half_length - r * std::cos(phi);
    std::vector<Point> pts;
    append_arc(pts, {half_length, 0.0}, r, -(pi - phi), pi - phi, 80);
    append_line(pts, {x_in, bar}, {-x_in, bar}, 20);
    append_arc(pts, {-half_length, 0.0}, r, phi, 2.0 * pi - phi, 80);
    append_line(pts, {-x_in, -bar}, {x_in, -bar}, 20);
    return Contour(std::move(pts));
}

/// Elliptic body with a forked tail.
inline Contour fish() {
    const double pi = std::numbers::pi;
    const double open = 0.55;
    std::vector<Point> pts;
    append_arc(pts, {0.0, 0.0}, 1.0, -(pi - open), pi - open, 120);
    for (auto& p : pts) p = {55.0 * p.x, 26.0 * p.y};
    const Point top{55.0 * std::cos(pi - open), 26.0 * std::sin(pi - open)};
    const Point bottom{top.x, -top.y};
    append_line(pts, top, {-92.0, 30.0}, 18);
    append_line(pts, {-92.0, 30.0}, {-72.0, 0.0}, 18);
    append_line(pts, {-72.0, 0.0}, {-92.0, -30.0}, 18);
    append_line(pts, {-92.0, -30.0}, bottom, 18);
    return Contour(std::move(pts));
}

/// Named class templates used by the benchmarks and tests.
inline Contour class_template(const std::string& name) {
    if (name == "star") return polygon(star_vertices(5, 60.0, 26.0), 16);
    if (name == "cross") return polygon(cross_vertices(60.0, 36.0), 16);
    if (name == "house") return polygon(house_vertices(50.0), 24);
    if (name == "square") return polygon(square_vertices(100.0), 40);
    if (name == "circle") return circle(50.0, 240);
    if (name == "flower") return radial([](double t) { return 50.0 * (1.0 + 0.3 * std::cos(5.0 * t)); });
    if (name == "bone") return bone();
    if (name == "fish") return fish();
    if (name == "arrow")
        return polygon({{-60, -12}, {20, -12}, {20, -35}, {65, 0}, {20, 35}, {20, 12}, {-60, 12}}, 20);
    throw std::invalid_argument("unknown shape class: " + name);
}

struct LabeledContour {
    std::string id;     // "<class>-<instance>"
    std::string label;
    Contour contour;
};

/// `per_class` deformed instances of each named class; instance 0 is also deformed.
inline std::vector<LabeledContour> make_dataset(const std::vector<std::string>& classes, int per_class,
                                                std::uint64_t seed, const Deformation& d = {}) {
    std::mt19937_64 rng(seed);
    std::vector<LabeledContour> out;
    for (const auto& cls : classes) {
        const Contour base = class_template(cls);
        for (int k = 0; k < per_class; ++k) {
            char idx[16];
            std::snprintf(idx, sizeof idx, "%02d", k);
            out.push_back({cls + "-" + idx, cls, deform(base, rng, d)});
        }
    }
    return out;
}

}  // namespace gsmatch::synth
