#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "gsmatch/normalize.hpp"
#include "gsmatch/params.hpp"

namespace gsmatch {

struct EdgeElement {
    int x = 0;
    int y = 0;
    int channel = 0;
};

/// Rasterised normalised group: edge pixels with quantised orientation.
struct OrientedEdgeMap {
    int width = 0;
    int height = 0;
    int n_orient = 0;
    std::vector<std::uint32_t> channels;  // per pixel: bit o set when orientation channel o is present
    std::vector<EdgeElement> edges;       // one entry per (pixel, channel)
    std::vector<long long> outside;       // sorted keys of (pixel, channel) samples off the canvas
    std::size_t clipped = 0;              // outside.size()

    bool has(int x, int y, int o) const {
        return x >= 0 && y >= 0 && x < width && y < height && (channels[static_cast<std::size_t>(y) * width + x] >> o & 1u);
    }
};

/// Orientation in [0, pi) of a direction vector, quantised to the nearest of
/// n channels centred on k * pi / n.
inline int orientation_channel(Point dir, int n_orient) {
    double theta = std::atan2(dir.y, dir.x);
    if (theta < 0.0) theta += std::numbers::pi;
    if (theta >= std::numbers::pi) theta -= std::numbers::pi;
    const int ch = static_cast<int>(std::lround(theta / (std::numbers::pi / n_orient)));
    return ch % n_orient;
}

struct CanvasFrame {
    int width = 128;
    int height = 128;
    double origin_x = 39.0;  // canvas position of canonical (0, 0)
    double origin_y = 64.0;
    double scale = 0.5;      // pixels per canonical unit

    Point to_canvas(Point p) const { return {p.x * scale + origin_x, p.y * scale + origin_y}; }

    static CanvasFrame from(const CostParams& p, bool is_closed) {
        CanvasFrame f;
        f.width = p.canvas_width;
        f.height = p.canvas_height;
        // Open groups span [0, L] horizontally; closed ones are centred.
        f.origin_x = is_closed ? 0.5 * p.canvas_width : static_cast<double>(p.canvas_margin);
        f.origin_y = 0.5 * p.canvas_height;
        f.scale = p.raster_scale;
        return f;
    }
};

inline long long outside_key(int px, int py, int ch) {
    constexpr long long kBias = 1LL << 24;
    return ((px + kBias) * (2 * kBias) + (py + kBias)) * 64 + ch;
}

inline OrientedEdgeMap rasterize(std::span<const Point> pts, bool is_closed, const CanvasFrame& frame, int n_orient) {
    OrientedEdgeMap em;
    em.width = frame.width;
    em.height = frame.height;
    em.n_orient = n_orient;
    em.channels.assign(static_cast<std::size_t>(frame.width) * frame.height, 0u);
    const std::size_t n = pts.size();
    if (n < 2) return em;
    std::vector<long long> off_canvas;
    auto at = [&](long long i) -> Point {
        if (is_closed) return pts[static_cast<std::size_t>(((i % static_cast<long long>(n)) + n) % n)];
        return pts[static_cast<std::size_t>(std::clamp<long long>(i, 0, static_cast<long long>(n) - 1))];
    };
    auto mark = [&](int px, int py, int ch) {
        if (px >= 0 && py >= 0 && px < em.width && py < em.height) {
            auto& bits = em.channels[static_cast<std::size_t>(py) * em.width + px];
            if (!(bits >> ch & 1u)) {
                bits |= 1u << ch;
                em.edges.push_back({px, py, ch});
            }
        } else {
            off_canvas.push_back(outside_key(px, py, ch));
        }
    };
    const std::size_t steps_total = is_closed ? n : n - 1;
    for (std::size_t k = 0; k < steps_total; ++k) {
        const long long kk = static_cast<long long>(k);
        // Smoothed local direction over a four-point chord.
        Point dir = at(kk + 2) - at(kk - 1);
        if (norm(dir) < 1e-12) dir = at(kk + 1) - at(kk);
        if (norm(dir) < 1e-12) continue;
        const int ch = orientation_channel(dir, n_orient);
        const Point a = frame.to_canvas(at(kk));
        const Point b = frame.to_canvas(at(kk + 1));
        const double span = std::max(std::abs(b.x - a.x), std::abs(b.y - a.y));
        const int steps = std::max(1, static_cast<int>(std::ceil(span)));
        for (int s = 0; s <= steps; ++s) {
            const Point q = a + (b - a) * (static_cast<double>(s) / steps);
            mark(static_cast<int>(std::floor(q.x + 0.5)), static_cast<int>(std::floor(q.y + 0.5)), ch);
        }
    }
    std::sort(off_canvas.begin(), off_canvas.end());
    off_canvas.erase(std::unique(off_canvas.begin(), off_canvas.end()), off_canvas.end());
    em.outside = std::move(off_canvas);
    em.clipped = em.outside.size();
    return em;
}

inline OrientedEdgeMap rasterize(const NormalizedGS& ngs, const CostParams& p) {
    return rasterize(ngs.points, ngs.is_closed, CanvasFrame::from(p, ngs.is_closed), p.n_orient);
}

/// Orientation-augmented distance transform stored in thirds of a pixel
/// (exact for the 3-4 chamfer mask), saturating at 255. One plane per
/// orientation channel.
class DirectionalDT {
public:
    static constexpr double kUnit = 3.0;

    DirectionalDT() = default;
    DirectionalDT(int w, int h, int n_orient, double lambda)
        : width_(w), height_(h), n_orient_(n_orient), lambda_(lambda),
          data_(static_cast<std::size_t>(w) * h * n_orient, 255) {}

    int width() const { return width_; }
    int height() const { return height_; }
    int n_orient() const { return n_orient_; }
    double lambda() const { return lambda_; }

    std::uint8_t raw(int x, int y, int o) const { return data_[offset(x, y, o)]; }
    /// Distance in pixels.
    double value(int x, int y, int o) const { return raw(x, y, o) / kUnit; }
    std::size_t bytes() const { return data_.size(); }

    std::uint8_t* plane(int o) { return data_.data() + offset(0, 0, o); }
    const std::uint8_t* plane(int o) const { return data_.data() + offset(0, 0, o); }

    void save(std::ostream& out) const {
        const std::uint32_t header[4] = {0x54445347u /* "GSDT" */, static_cast<std::uint32_t>(width_),
                                         static_cast<std::uint32_t>(height_), static_cast<std::uint32_t>(n_orient_)};
        out.write(reinterpret_cast<const char*>(header), sizeof header);
        out.write(reinterpret_cast<const char*>(&lambda_), sizeof lambda_);
        out.write(reinterpret_cast<const char*>(data_.data()), static_cast<std::streamsize>(data_.size()));
    }

    static DirectionalDT load(std::istream& in) {
        std::uint32_t header[4] = {};
        double lambda = 0.0;
        if (!in.read(reinterpret_cast<char*>(header), sizeof header) || header[0] != 0x54445347u)
            throw std::runtime_error("not a directional distance transform file");
        if (!in.read(reinterpret_cast<char*>(&lambda), sizeof lambda)) throw std::runtime_error("truncated DT header");
        if (header[1] == 0 || header[2] == 0 || header[3] == 0 || header[1] > 65536 || header[2] > 65536 || header[3] > 32)
            throw std::runtime_error("bad DT dimensions");
        DirectionalDT dt(static_cast<int>(header[1]), static_cast<int>(header[2]), static_cast<int>(header[3]), lambda);
        if (!in.read(reinterpret_cast<char*>(dt.data_.data()), static_cast<std::streamsize>(dt.data_.size())))
            throw std::runtime_error("truncated DT payload");
        return dt;
    }

    friend bool operator==(const DirectionalDT&, const DirectionalDT&) = default;

private:
    std::size_t offset(int x, int y, int o) const {
        return (static_cast<std::size_t>(o) * height_ + y) * static_cast<std::size_t>(width_) + x;
    }

    int width_ = 0;
    int height_ = 0;
    int n_orient_ = 0;
    double lambda_ = 0.0;
    std::vector<std::uint8_t> data_;
};

namespace detail {

inline std::uint8_t sat_add(std::uint8_t v, std::uint8_t c) {
    return v > 255 - c ? std::uint8_t{255} : static_cast<std::uint8_t>(v + c);
}

/// Two-pass 3-4 chamfer transform of one plane. Each row first takes the
/// finished row above (vectorisable), then the in-row chain.
inline void chamfer_plane(std::uint8_t* d, int w, int h) {
    for (int x = 1; x < w; ++x) d[x] = std::min(d[x], sat_add(d[x - 1], 3));
    for (int y = 1; y < h; ++y) {
        std::uint8_t* __restrict cur = d + static_cast<std::size_t>(y) * w;
        const std::uint8_t* __restrict up = cur - w;
        cur[0] = std::min({cur[0], sat_add(up[0], 3), sat_add(up[1], 4)});
        for (int x = 1; x + 1 < w; ++x)
            cur[x] = std::min({cur[x], sat_add(up[x], 3), sat_add(up[x - 1], 4), sat_add(up[x + 1], 4)});
        cur[w - 1] = std::min({cur[w - 1], sat_add(up[w - 1], 3), sat_add(up[w - 2], 4)});
        for (int x = 1; x < w; ++x) cur[x] = std::min(cur[x], sat_add(cur[x - 1], 3));
    }
    {
        std::uint8_t* row = d + static_cast<std::size_t>(h - 1) * w;
        for (int x = w - 2; x >= 0; --x) row[x] = std::min(row[x], sat_add(row[x + 1], 3));
    }
    for (int y = h - 2; y >= 0; --y) {
        std::uint8_t* __restrict cur = d + static_cast<std::size_t>(y) * w;
        const std::uint8_t* __restrict dn = cur + w;
        cur[0] = std::min({cur[0], sat_add(dn[0], 3), sat_add(dn[1], 4)});
        for (int x = 1; x + 1 < w; ++x)
            cur[x] = std::min({cur[x], sat_add(dn[x], 3), sat_add(dn[x - 1], 4), sat_add(dn[x + 1], 4)});
        cur[w - 1] = std::min({cur[w - 1], sat_add(dn[w - 1], 3), sat_add(dn[w - 2], 4)});
        for (int x = w - 2; x >= 0; --x) cur[x] = std::min(cur[x], sat_add(cur[x + 1], 3));
    }
}

inline void plane_relax(std::uint8_t* __restrict dst, const std::uint8_t* __restrict src, std::size_t n,
                        std::uint8_t step) {
    for (std::size_t k = 0; k < n; ++k) dst[k] = std::min(dst[k], sat_add(src[k], step));
}

}  // namespace detail

/// Per-channel 3-4 chamfer transform followed by cyclic sweeps over the
/// orientation axis with step cost lambda.
inline DirectionalDT directional_distance_transform(const OrientedEdgeMap& em, double lambda) {
    if (em.edges.empty()) throw std::invalid_argument("empty edge map");
    const int w = em.width, h = em.height, no = em.n_orient;
    DirectionalDT dt(w, h, no, lambda);
    std::vector<bool> used(static_cast<std::size_t>(no), false);
    for (const auto& e : em.edges) {
        dt.plane(e.channel)[static_cast<std::size_t>(e.y) * w + e.x] = 0;
        used[static_cast<std::size_t>(e.channel)] = true;
    }
    // Planes without edges stay saturated under the spatial pass.
    for (int o = 0; o < no; ++o)
        if (used[static_cast<std::size_t>(o)]) detail::chamfer_plane(dt.plane(o), w, h);

    const auto step = static_cast<std::uint8_t>(std::lround(lambda * DirectionalDT::kUnit));
    const std::size_t area = static_cast<std::size_t>(w) * h;
    // Two laps in each direction cover every cyclic path.
    for (int k = 1; k < 2 * no; ++k) detail::plane_relax(dt.plane(k % no), dt.plane((k - 1) % no), area, step);
    for (int k = 2 * no - 2; k >= 0; --k) detail::plane_relax(dt.plane(k % no), dt.plane((k + 1) % no), area, step);
    return dt;
}

namespace detail {

inline double on_canvas_sum(const OrientedEdgeMap& q, const DirectionalDT& target, double tau) {
    if (q.width != target.width() || q.height != target.height() || q.n_orient != target.n_orient())
        throw std::invalid_argument("canvas mismatch");
    double sum = 0.0;
    for (const auto& e : q.edges) sum += std::min(target.value(e.x, e.y, e.channel), tau);
    return sum;
}

}  // namespace detail

/// Mean clamped directional distance of q's edges to the target transform.
/// Edges that fell off q's canvas count as tau.
inline double fdcm_score(const OrientedEdgeMap& q, const DirectionalDT& target, double tau) {
    const std::size_t total = q.edges.size() + q.clipped;
    const double sum = detail::on_canvas_sum(q, target, tau);
    if (total == 0) return tau;
    return (sum + static_cast<double>(q.clipped) * tau) / static_cast<double>(total);
}

/// As above, but an off-canvas sample of q costs nothing when the target
/// has the same off-canvas sample: both maps agree beyond the border.
inline double fdcm_score(const OrientedEdgeMap& q, const OrientedEdgeMap& target_map, const DirectionalDT& target,
                         double tau) {
    const std::size_t total = q.edges.size() + q.clipped;
    const double sum = detail::on_canvas_sum(q, target, tau);
    if (total == 0) return tau;
    // Both key lists are sorted: count the shared ones in one merge pass.
    std::size_t shared = 0;
    for (auto i = q.outside.begin(), j = target_map.outside.begin(); i != q.outside.end() && j != target_map.outside.end();) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++shared;
            ++i;
            ++j;
        }
    }
    const std::size_t unmatched = q.outside.size() - shared;
    return (sum + static_cast<double>(unmatched) * tau) / static_cast<double>(total);
}

/// Symmetrised directional chamfer cost between two rasterised groups.
inline double chamfer_cost(const OrientedEdgeMap& a, const DirectionalDT& a_dt, const OrientedEdgeMap& b,
                           const DirectionalDT& b_dt, double tau) {
    return 0.5 * (fdcm_score(a, b, b_dt, tau) + fdcm_score(b, a, a_dt, tau));
}

}  // namespace gsmatch
