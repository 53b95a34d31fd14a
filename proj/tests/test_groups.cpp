#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace gsmatch;

TEST(Complexity, TurningAngles) {
    const std::vector<Point> corners{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    EXPECT_NEAR(gs_complexity(corners), 180.0, 1e-12);
    const std::vector<Point> straight{{0, 0}, {1, 0}, {2, 0}};
    EXPECT_NEAR(gs_complexity(straight), 0.0, 1e-12);
    const std::vector<Point> loop{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
    EXPECT_NEAR(gs_complexity(loop, true), 360.0, 1e-12);
}

TEST(Catalog, SquareEnumeration) {
    const CostParams p;
    const auto a = fixtures::polygon_bundle(synth::square_vertices(100.0), p, 25, false);
    const auto& cat = a.catalog();
    // 4 singles, 4 corners (90), 4 double corners (180), and the closed loop
    // (360) once per starting segment.
    EXPECT_EQ(cat.size(), 16u);
    for (const auto& g : cat.groups()) {
        EXPECT_NEAR(g.weight, 0.25 * static_cast<double>(g.seg_count), 1e-12);
        if (g.seg_count > 1 && !g.is_closed) EXPECT_NEAR(g.complexity, 90.0 * static_cast<double>(g.seg_count - 1), 1e-9);
    }
    const auto whole = cat.find(0, 4);
    ASSERT_TRUE(whole);
    EXPECT_TRUE(cat[*whole].is_closed);
    EXPECT_EQ(cat[*whole].points.size(), 100u);
    const auto run = cat.find(3, 2);
    ASSERT_TRUE(run);
    EXPECT_EQ(cat[*run].points.size(), 51u);  // wraps and includes its end point
    EXPECT_FALSE(cat.find(0, 5));
}

TEST(Catalog, ComplexityWindow) {
    CostParams p;
    p.c_min = 100.0;
    p.c_max = 200.0;
    const auto a = fixtures::polygon_bundle(synth::square_vertices(100.0), p, 25, false);
    // Only singles and the 180-degree runs survive.
    EXPECT_EQ(a.catalog().size(), 8u);
    for (const auto& g : a.catalog().groups())
        if (g.seg_count > 1) {
            EXPECT_GE(g.complexity, p.c_min);
            EXPECT_LE(g.complexity, p.c_max);
        }
}

TEST(Catalog, RealShapesStayInBounds) {
    const CostParams p;
    for (const char* name : {"flower", "bone", "house"}) {
        const auto b = ShapeBundle::build(synth::class_template(name), p, false);
        for (const auto& g : b.catalog().groups()) {
            EXPECT_GT(g.weight, 0.0);
            EXPECT_LE(g.weight, 1.0);
            if (g.seg_count > 1) EXPECT_LE(g.complexity, p.c_max);
            if (g.seg_count > 1 && !g.is_closed) EXPECT_GE(g.complexity, p.c_min);
        }
    }
}
