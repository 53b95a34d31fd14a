#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace gsmatch;

TEST(Sharpness, WeightsAreNormalisedAndCentred) {
    SharpnessParams sp;
    sp.ns = 6;
    sp.sigma = 1.5;
    const auto w = sharpness_weights(sp);
    double total = 0.0;
    for (double x : w) total += x;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(w[1], w[3], 1e-15);  // j = 2 and j = 4 sit symmetric around j = 3
    EXPECT_GT(w[2], w[1]);
}

TEST(Sharpness, NearCornerMatchesDirectSummation) {
    // Unit-spaced square, 20 points per side; evaluate 2 points after a corner.
    const Contour sq = synth::polygon(synth::square_vertices(20.0), 20);
    SharpnessParams sp;
    sp.ns = 6;
    sp.sigma = 1.5;
    const std::size_t corner = 20;  // vertex (10, -10)
    const std::size_t i = corner + 2;

    double wsum = 0.0, acc = 0.0;
    for (int j = 1; j <= 6; ++j) wsum += std::exp(-(j - 3.0) * (j - 3.0) / (2 * 2.25));
    for (int j = 1; j <= 6; ++j) {
        const Point a = sq.at(static_cast<long long>(i) - j), b = sq.at(static_cast<long long>(i)),
                    c = sq.at(static_cast<long long>(i) + j);
        const double ux = a.x - b.x, uy = a.y - b.y, vx = c.x - b.x, vy = c.y - b.y;
        const double ang = std::acos(std::clamp((ux * vx + uy * vy) / std::hypot(ux, uy) / std::hypot(vx, vy), -1.0, 1.0)) *
                           180.0 / std::numbers::pi;
        acc += std::exp(-(j - 3.0) * (j - 3.0) / (2 * 2.25)) / wsum * (180.0 - ang);
    }
    EXPECT_NEAR(angle_sharpness(sq, i, sp), acc, 1e-9);
    // Exactly at the corner every pair sees a right angle.
    EXPECT_NEAR(angle_sharpness(sq, corner, sp), 90.0, 1e-9);
    // Mid-edge is straight.
    EXPECT_NEAR(angle_sharpness(sq, corner + 10, sp), 0.0, 1e-9);
}

TEST(BreakPoints, SquareCornersFound) {
    const CostParams p;
    const Contour sq = resample(synth::polygon(synth::square_vertices(100.0), 40), 200);
    const auto bps = detect_break_points(sq, p);
    std::vector<std::size_t> corners;
    for (const auto& bp : bps)
        if (bp.kind == BreakKind::HighCurvature) corners.push_back(bp.index);
    ASSERT_EQ(corners.size(), 4u);
    const std::size_t expect[] = {0, 50, 100, 150};
    for (std::size_t k = 0; k < 4; ++k) EXPECT_LE(ring_distance(corners[k], expect[k], 200), 1u);
    // d_k = 0.1 of 200 points: no segment longer than 20 points.
    for (const auto& s : segment_contour(sq, bps)) EXPECT_LE(s.point_count, 20u);
}

TEST(BreakPoints, MaxSizeFillOnCircle) {
    const Contour c = resample(synth::circle(50.0, 300), 200);
    const auto bps = insert_max_size_points(c, {}, 0.1);
    const auto segs = segment_contour(c, bps);
    ASSERT_EQ(segs.size(), 10u);
    for (const auto& s : segs) EXPECT_NEAR(s.weight, 0.1, 1e-12);
}

TEST(BreakPoints, SegmentWeightsSumToOne) {
    const CostParams p;
    for (const char* name : {"star", "bone", "fish", "house"}) {
        const Contour c = resample(synth::class_template(name), 200);
        const auto segs = segment_contour(c, detect_break_points(c, p));
        double total = 0.0;
        std::size_t points = 0;
        for (const auto& s : segs) {
            total += s.weight;
            points += s.point_count;
        }
        EXPECT_NEAR(total, 1.0, 1e-9) << name;
        EXPECT_EQ(points, c.size()) << name;
    }
}

TEST(BreakPoints, OppositePointAcrossAFinger) {
    // Bar with a thin finger on top. From the right base of the finger the
    // pinch crosses to the left base, 20 units away but 100 along the contour.
    const std::vector<Point> v{{0, 0}, {200, 0}, {200, 60}, {110, 60}, {110, 100}, {90, 100}, {90, 60}, {0, 60}};
    const Contour c = resample(synth::polygon(v, 40), 300);
    auto nearest = [&](Point q) {
        std::size_t best = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (distance(c.points()[i], q) < distance(c.points()[best], q)) best = i;
        return best;
    };
    const std::vector<BreakPoint> concave{{nearest({110, 60}), BreakKind::HighCurvature, 0.0}};
    const auto opp = detect_opposite_points(c, concave, {}, OppositeParams{});
    ASSERT_EQ(opp.size(), 1u);
    EXPECT_EQ(opp[0].kind, BreakKind::Opposite);
    EXPECT_LT(distance(c.points()[opp[0].index], {90, 60}), 2.5);
}

TEST(BreakPoints, OppositeSnapsToNearbyCorner) {
    const std::vector<Point> v{{0, 0}, {200, 0}, {200, 60}, {110, 60}, {110, 100}, {90, 100}, {90, 60}, {0, 60}};
    const Contour c = resample(synth::polygon(v, 40), 300);
    const auto bps = detect_break_points(c, CostParams{});
    // Both finger bases are corners in their own right, so they appear as
    // high-curvature points and no separate opposite point is added near them.
    for (const Point corner : {Point{110, 60}, Point{90, 60}}) {
        bool found = false;
        for (const auto& bp : bps) found |= distance(c.points()[bp.index], corner) < 2.5;
        EXPECT_TRUE(found) << corner.x;
    }
}

TEST(BreakPoints, TilingNeedsTwoPoints) {
    const Contour c = synth::circle(10.0, 40);
    EXPECT_THROW(segment_contour(c, {{3, BreakKind::MaxSize, 0.0}}), std::invalid_argument);
    EXPECT_THROW(segment_contour(c, {{5, BreakKind::MaxSize, 0.0}, {3, BreakKind::MaxSize, 0.0}}),
                 std::invalid_argument);
    const auto segs = segment_contour(c, {{3, BreakKind::MaxSize, 0.0}, {13, BreakKind::MaxSize, 0.0}});
    EXPECT_EQ(segs[0].point_count, 10u);
    EXPECT_EQ(segs[1].point_count, 30u);
}

TEST(BreakPoints, SidecarRoundTrip) {
    const CostParams p;
    const Contour c = resample(synth::class_template("fish"), 200);
    const auto bps = detect_break_points(c, p);
    std::stringstream s;
    write_break_points(s, bps);
    EXPECT_EQ(read_break_points(s), bps);
}
