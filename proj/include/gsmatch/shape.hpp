#pragma once

#include <cstddef>
#include <vector>

#include "gsmatch/breakpoints.hpp"
#include "gsmatch/contour.hpp"
#include "gsmatch/cost.hpp"
#include "gsmatch/fdcm.hpp"
#include "gsmatch/groups.hpp"
#include "gsmatch/normalize.hpp"
#include "gsmatch/params.hpp"

namespace gsmatch {

/// Everything the matcher needs about one shape: resampled contour,
/// break-points, segments, group catalogue, normalised rasters and (on
/// demand) the directional distance transforms.
class ShapeBundle {
public:
    ShapeBundle() = default;

    /// Runs the full preprocessing pipeline: resample, detect break-points, enumerate.
    /// Distance transforms are computed unless `with_transforms` is false
    /// (they are large; batch jobs create them on demand).
    static ShapeBundle build(const Contour& raw, const CostParams& p, bool with_transforms = true) {
        Contour c = resample(raw, static_cast<std::size_t>(p.sample_count));
        auto bps = detect_break_points(c, p);
        return build(std::move(c), std::move(bps), p, with_transforms);
    }

    /// Uses the given contour as-is with caller-supplied break-points.
    static ShapeBundle build(Contour c, std::vector<BreakPoint> bps, const CostParams& p, bool with_transforms = true) {
        ShapeBundle b;
        b.params_ = p;
        b.contour_ = std::move(c);
        b.breakpoints_ = std::move(bps);
        b.segments_ = segment_contour(b.contour_, b.breakpoints_);
        b.catalog_ = enumerate_gs(b.contour_, b.segments_, p);
        b.prepare_groups();
        if (with_transforms) b.compute_transforms();
        return b;
    }

    const CostParams& params() const { return params_; }
    const Contour& contour() const { return contour_; }
    const std::vector<BreakPoint>& breakpoints() const { return breakpoints_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const GsCatalog& catalog() const { return catalog_; }
    const std::vector<NormalizedGS>& normalized() const { return normalized_; }
    const std::vector<OrientedEdgeMap>& edge_maps() const { return edges_; }

    /// Junction angles for prev -> cur (zero when either chord is degenerate).
    const JunctionAngles& angles(std::size_t prev, std::size_t cur) const {
        return junctions_[prev * catalog_.size() + cur];
    }

    bool has_transforms() const { return !dts_.empty(); }
    void compute_transforms() {
        if (!dts_.empty()) return;
        dts_.reserve(edges_.size());
        for (const auto& em : edges_) {
            if (em.edges.empty()) {
                // Nothing landed on the canvas: every lookup saturates.
                dts_.emplace_back(em.width, em.height, em.n_orient, params_.lambda);
            } else {
                dts_.push_back(directional_distance_transform(em, params_.lambda));
            }
        }
    }
    void release_transforms() {
        dts_.clear();
        dts_.shrink_to_fit();
    }
    const DirectionalDT& transform(std::size_t gs) const { return dts_.at(gs); }
    std::size_t transform_bytes() const {
        std::size_t b = 0;
        for (const auto& d : dts_) b += d.bytes();
        return b;
    }
    /// Bytes the transforms take once computed.
    std::size_t expected_transform_bytes() const {
        return catalog_.size() * static_cast<std::size_t>(params_.canvas_width) * params_.canvas_height * params_.n_orient;
    }

private:
    void prepare_groups() {
        const std::size_t m = catalog_.size();
        normalized_.reserve(m);
        edges_.reserve(m);
        for (const auto& g : catalog_.groups()) {
            normalized_.push_back(normalize_gs(g, params_));
            auto em = rasterize(normalized_.back(), params_);
            em.channels.clear();  // only the edge list is needed for scoring
            em.channels.shrink_to_fit();
            edges_.push_back(std::move(em));
        }
        junctions_.assign(m * m, JunctionAngles{});
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                try {
                    junctions_[i * m + j] = junction_angles(catalog_[i], catalog_[j]);
                } catch (const std::invalid_argument&) {
                    // closed groups have no chord; they never take part in a binary term
                }
            }
    }

    CostParams params_;
    Contour contour_;
    std::vector<BreakPoint> breakpoints_;
    std::vector<Segment> segments_;
    GsCatalog catalog_;
    std::vector<NormalizedGS> normalized_;
    std::vector<OrientedEdgeMap> edges_;
    std::vector<JunctionAngles> junctions_;
    std::vector<DirectionalDT> dts_;
};

}  // namespace gsmatch
