#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gsmatch/breakpoints.hpp"
#include "gsmatch/contour.hpp"
#include "gsmatch/params.hpp"

namespace gsmatch {

/// A contiguous cyclic run of segments treated as one locally affine part.
struct GroupOfSegments {
    std::size_t start_seg = 0;
    std::size_t seg_count = 0;
    std::size_t point_count = 0;  // N(gs)
    double weight = 0.0;          // N(gs) / N
    double complexity = 0.0;      // degrees
    bool is_closed = false;
    std::vector<Point> points;  // sub-polyline in the original frame

    std::size_t end_seg(std::size_t total_segments) const { return (start_seg + seg_count - 1) % total_segments; }
    Point first() const { return points.front(); }
    Point last() const { return points.back(); }
    /// Point halfway along the sub-polyline by arc length.
    Point arc_midpoint() const {
        double total = 0.0;
        for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
        double acc = 0.0;
        for (std::size_t i = 1; i < points.size(); ++i) {
            const double len = distance(points[i - 1], points[i]);
            if (acc + len >= 0.5 * total && len > 0.0) {
                const double t = (0.5 * total - acc) / len;
                return points[i - 1] + (points[i] - points[i - 1]) * t;
            }
            acc += len;
        }
        return points.front();
    }
};

/// Sum of turning angles between consecutive segment chords. `corners` lists
/// the break-point positions along the run (k+1 points for k segments); a
/// closed run also counts the junctions at its start.
inline double gs_complexity(std::span<const Point> corners, bool closed = false) {
    if (corners.size() < 2) throw std::invalid_argument("a run needs at least one segment");
    const std::size_t k = corners.size();
    for (std::size_t i = 1; i < k; ++i)
        if (distance(corners[i - 1], corners[i]) < 1e-12) throw std::invalid_argument("degenerate segment chord");
    double c = 0.0;
    for (std::size_t i = 1; i + 1 < k; ++i) c += 180.0 - angle_at(corners[i - 1], corners[i], corners[i + 1]);
    if (closed && k >= 3) {
        // corners.front() == corners.back(); add the junction where the loop closes.
        c += 180.0 - angle_at(corners[k - 2], corners[0], corners[1]);
    }
    return c;
}

/// Per-shape catalogue of usable groups, indexed by (start segment, length).
class GsCatalog {
public:
    GsCatalog() = default;
    explicit GsCatalog(std::size_t segment_count)
        : m_(segment_count), lookup_(segment_count * segment_count, -1) {}

    std::size_t segment_count() const { return m_; }
    std::size_t size() const { return groups_.size(); }
    const std::vector<GroupOfSegments>& groups() const { return groups_; }
    const GroupOfSegments& operator[](std::size_t i) const { return groups_[i]; }

    std::optional<std::size_t> find(std::size_t start_seg, std::size_t seg_count) const {
        if (seg_count == 0 || seg_count > m_ || start_seg >= m_) return std::nullopt;
        const int v = lookup_[start_seg * m_ + (seg_count - 1)];
        if (v < 0) return std::nullopt;
        return static_cast<std::size_t>(v);
    }

    void add(GroupOfSegments g) {
        auto& slot = lookup_[g.start_seg * m_ + (g.seg_count - 1)];
        if (slot >= 0) throw std::logic_error("duplicate group in catalogue");
        slot = static_cast<int>(groups_.size());
        groups_.push_back(std::move(g));
    }

private:
    std::size_t m_ = 0;
    std::vector<int> lookup_;
    std::vector<GroupOfSegments> groups_;
};

/// Builds the group for segments [start, start + count) of a tiled contour.
inline GroupOfSegments make_group(const Contour& c, const std::vector<Segment>& segs, std::size_t start, std::size_t count) {
    const std::size_t m = segs.size();
    const std::size_t n = c.size();
    GroupOfSegments g;
    g.start_seg = start;
    g.seg_count = count;
    g.is_closed = count == m;
    std::vector<Point> corners;
    for (std::size_t k = 0; k < count; ++k) {
        const Segment& s = segs[(start + k) % m];
        g.point_count += s.point_count;
        corners.push_back(c.points()[s.start_index]);
    }
    corners.push_back(c.points()[segs[(start + count - 1) % m].end_index]);
    g.weight = static_cast<double>(g.point_count) / static_cast<double>(n);
    g.complexity = gs_complexity(corners, g.is_closed);
    const std::size_t first = segs[start].start_index;
    // Open runs include their closing break-point; closed runs list each point once.
    const std::size_t npts = g.is_closed ? n : g.point_count + 1;
    g.points.reserve(npts);
    for (std::size_t k = 0; k < npts; ++k) g.points.push_back(c.points()[(first + k) % n]);
    return g;
}

/// All runs whose complexity lies in [c_min, c_max], plus every single
/// segment, plus the whole contour when its complexity is at most c_max.
inline GsCatalog enumerate_gs(const Contour& c, const std::vector<Segment>& segs, const CostParams& p) {
    const std::size_t m = segs.size();
    GsCatalog cat(m);
    for (std::size_t start = 0; start < m; ++start) {
        for (std::size_t len = 1; len <= m; ++len) {
            GroupOfSegments g;
            try {
                g = make_group(c, segs, start, len);
            } catch (const std::invalid_argument&) {
                continue;  // zero-length chord somewhere in the run
            }
            const bool keep = len == 1 || (g.is_closed ? g.complexity <= p.c_max
                                                       : g.complexity >= p.c_min && g.complexity <= p.c_max);
            if (keep) cat.add(std::move(g));
        }
    }
    return cat;
}

}  // namespace gsmatch
