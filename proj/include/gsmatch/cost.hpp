#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "gsmatch/breakpoints.hpp"
#include "gsmatch/groups.hpp"
#include "gsmatch/params.hpp"

namespace gsmatch {

/// One group correspondence. Indices refer to the two shapes' catalogues.
struct MatchPair {
    std::size_t gs1 = 0;
    std::size_t gs2 = 0;
    double pair_weight = 0.0;  // w1 + w2
    double c_dc = 0.0;         // symmetrised chamfer cost, raster units
};

struct MatchList {
    std::vector<MatchPair> pairs;
    std::vector<std::size_t> skipped1;  // segment indices of shape 1 without a match
    std::vector<std::size_t> skipped2;
    double total_cost = 0.0;
};

inline double complexity_term(double complexity, const CostParams& p) {
    return p.alpha_c / std::max(complexity, p.complexity_floor);
}

/// Matching cost plus complexity cost of one correspondence.
inline double unary_cost(const GroupOfSegments& a, const GroupOfSegments& b, double c_dc, const CostParams& p) {
    const double wp = a.weight + b.weight;
    return wp * p.dc_weight * c_dc + wp * (complexity_term(a.complexity, p) + complexity_term(b.complexity, p));
}

struct JunctionAngles {
    double chord = 0.0;     // angle between the two chord directions
    double midpoint = 0.0;  // angle at the junction between the rays to the arc midpoints
};

/// Angles describing how `cur` attaches to `prev` within one shape. When the
/// two are not adjacent the junction is split into prev's end and cur's start.
inline JunctionAngles junction_angles(const GroupOfSegments& prev, const GroupOfSegments& cur) {
    JunctionAngles j;
    j.chord = vector_angle(prev.last() - prev.first(), cur.last() - cur.first());
    j.midpoint = vector_angle(prev.arc_midpoint() - prev.last(), cur.arc_midpoint() - cur.first());
    return j;
}

/// Scale and angular inconsistency between consecutive correspondences.
/// Sizes are point counts, angles come from junction_angles.
inline double binary_cost_terms(std::size_t n_prev1, std::size_t n_cur1, std::size_t n_prev2, std::size_t n_cur2,
                                const JunctionAngles& j1, const JunctionAngles& j2, double w_ip, const CostParams& p) {
    const double ds = std::abs(static_cast<double>(n_prev1) / static_cast<double>(n_cur1) -
                               static_cast<double>(n_prev2) / static_cast<double>(n_cur2));
    const double dtheta = std::max(std::abs(j1.chord - j2.chord), std::abs(j1.midpoint - j2.midpoint));
    const double cs = p.alpha_s * w_ip * (1.0 - std::exp(-p.beta_s * ds));
    const double ca = p.alpha_a * w_ip * (1.0 - std::exp(-p.beta_a * dtheta));
    return cs + ca;
}

inline double binary_cost(const GroupOfSegments& cur1, const GroupOfSegments& cur2, const GroupOfSegments& prev1,
                          const GroupOfSegments& prev2, const CostParams& p) {
    const double w_ip = prev1.weight + cur1.weight + prev2.weight + cur2.weight;
    return binary_cost_terms(prev1.point_count, cur1.point_count, prev2.point_count, cur2.point_count,
                             junction_angles(prev1, cur1), junction_angles(prev2, cur2), w_ip, p);
}

inline double skip_cost(std::span<const Segment> skipped, const CostParams& p) {
    double c = 0.0;
    for (const auto& s : skipped) c += p.beta_skip * s.weight;
    return c;
}

namespace detail {

/// Checks that the groups, taken in list order, advance around the ring
/// without overlapping, and that they plus `skipped` tile it exactly.
inline void check_tiling(const GsCatalog& cat, const std::vector<std::size_t>& gs_ids,
                         const std::vector<std::size_t>& skipped) {
    const std::size_t m = cat.segment_count();
    std::vector<int> used(m, 0);
    if (!gs_ids.empty()) {
        const std::size_t origin = cat[gs_ids.front()].start_seg;
        std::size_t cursor = 0;
        for (std::size_t id : gs_ids) {
            if (id >= cat.size()) throw std::invalid_argument("invalid match list");
            const auto& g = cat[id];
            const std::size_t rel = (g.start_seg + m - origin) % m;
            if (rel < cursor || rel + g.seg_count > m) throw std::invalid_argument("invalid match list");
            cursor = rel + g.seg_count;
            for (std::size_t k = 0; k < g.seg_count; ++k) ++used[(g.start_seg + k) % m];
        }
    }
    for (std::size_t s : skipped) {
        if (s >= m) throw std::invalid_argument("invalid match list");
        ++used[s];
    }
    for (int u : used)
        if (u != 1) throw std::invalid_argument("invalid match list");
}

}  // namespace detail

/// Total cost of a match list: unary + binary (against the previous pair in
/// the list, none for the first) + skip costs of both shapes.
inline double match_list_cost(const MatchList& ml, const GsCatalog& cat1, const std::vector<Segment>& segs1,
                              const GsCatalog& cat2, const std::vector<Segment>& segs2, const CostParams& p) {
    std::vector<std::size_t> ids1, ids2;
    for (const auto& pr : ml.pairs) {
        ids1.push_back(pr.gs1);
        ids2.push_back(pr.gs2);
    }
    detail::check_tiling(cat1, ids1, ml.skipped1);
    detail::check_tiling(cat2, ids2, ml.skipped2);
    double total = 0.0;
    for (std::size_t k = 0; k < ml.pairs.size(); ++k) {
        const auto& cur = ml.pairs[k];
        total += unary_cost(cat1[cur.gs1], cat2[cur.gs2], cur.c_dc, p);
        if (k > 0) {
            const auto& prev = ml.pairs[k - 1];
            total += binary_cost(cat1[cur.gs1], cat2[cur.gs2], cat1[prev.gs1], cat2[prev.gs2], p);
        }
    }
    for (std::size_t s : ml.skipped1) total += p.beta_skip * segs1[s].weight;
    for (std::size_t s : ml.skipped2) total += p.beta_skip * segs2[s].weight;
    return total;
}

}  // namespace gsmatch
