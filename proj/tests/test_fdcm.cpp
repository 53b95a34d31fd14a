#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace gsmatch;

namespace {

OrientedEdgeMap blank(int w, int h, int no) {
    OrientedEdgeMap em;
    em.width = w;
    em.height = h;
    em.n_orient = no;
    em.channels.assign(static_cast<std::size_t>(w) * h, 0u);
    return em;
}

void add_edge(OrientedEdgeMap& em, int x, int y, int ch) {
    em.channels[static_cast<std::size_t>(y) * em.width + x] |= 1u << ch;
    em.edges.push_back({x, y, ch});
}

// Brute force in thirds of a pixel: 3-4 chamfer metric plus lambda per orientation step.
int brute(const OrientedEdgeMap& em, int x, int y, int o, int step) {
    int best = 255;
    for (const auto& e : em.edges) {
        const int dx = std::abs(e.x - x), dy = std::abs(e.y - y);
        const int spatial = 4 * std::min(dx, dy) + 3 * (std::max(dx, dy) - std::min(dx, dy));
        const int d = std::abs(e.channel - o);
        const int orient = std::min(d, em.n_orient - d) * step;
        best = std::min(best, spatial + orient);
    }
    return best;
}

}  // namespace

TEST(Orientation, ChannelsFoldDirection) {
    EXPECT_EQ(orientation_channel({1, 0}, 20), 0);
    EXPECT_EQ(orientation_channel({-1, 0}, 20), 0);
    EXPECT_EQ(orientation_channel({0, 1}, 20), 10);
    EXPECT_EQ(orientation_channel({0, -1}, 20), 10);
    EXPECT_EQ(orientation_channel({std::cos(0.16), std::sin(0.16)}, 20), 1);  // 9 degrees per channel
}

TEST(DirectionalDT, SingleEdge) {
    auto em = blank(32, 32, 20);
    add_edge(em, 10, 10, 0);
    const auto dt = directional_distance_transform(em, 4.0);
    EXPECT_DOUBLE_EQ(dt.value(10, 10, 0), 0.0);
    EXPECT_DOUBLE_EQ(dt.value(13, 10, 0), 3.0);
    EXPECT_DOUBLE_EQ(dt.value(11, 11, 0), 4.0 / 3.0);
    EXPECT_DOUBLE_EQ(dt.value(10, 10, 1), 4.0);
    EXPECT_DOUBLE_EQ(dt.value(10, 10, 19), 4.0);  // orientation wraps
    EXPECT_DOUBLE_EQ(dt.value(12, 10, 2), 2.0 + 8.0);
    // 21 diagonal steps plus 10 channels of orientation penalty, in thirds.
    EXPECT_EQ(dt.raw(31, 31, 10), 21 * 4 + 10 * 12);
    const auto steep = directional_distance_transform(em, 8.0);
    EXPECT_EQ(steep.raw(31, 31, 10), 255);  // saturated
}

TEST(DirectionalDT, MatchesBruteForce) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> xy(0, 23), ch(0, 11);
    auto em = blank(24, 24, 12);
    for (int k = 0; k < 9; ++k) add_edge(em, xy(rng), xy(rng), ch(rng));
    const auto dt = directional_distance_transform(em, 2.0);
    for (int o = 0; o < 12; ++o)
        for (int y = 0; y < 24; ++y)
            for (int x = 0; x < 24; ++x) ASSERT_EQ(dt.raw(x, y, o), brute(em, x, y, o, 6)) << x << ' ' << y << ' ' << o;
}

TEST(DirectionalDT, SaveLoadRoundTrip) {
    auto em = blank(16, 12, 4);
    add_edge(em, 3, 4, 1);
    const auto dt = directional_distance_transform(em, 4.0);
    std::stringstream s;
    dt.save(s);
    EXPECT_TRUE(DirectionalDT::load(s) == dt);
    std::stringstream junk("not a transform");
    EXPECT_THROW(DirectionalDT::load(junk), std::runtime_error);
    EXPECT_THROW(directional_distance_transform(blank(8, 8, 4), 4.0), std::invalid_argument);
}

TEST(Chamfer, IdentityAndSymmetry) {
    const CostParams p;
    const auto a = ShapeBundle::build(synth::class_template("fish"), p);
    const auto b = ShapeBundle::build(synth::class_template("bone"), p);
    for (std::size_t g = 0; g < a.catalog().size(); g += 7)
        EXPECT_EQ(chamfer_cost(a.edge_maps()[g], a.transform(g), a.edge_maps()[g], a.transform(g), p.tau_clamp), 0.0);
    const double ab = chamfer_cost(a.edge_maps()[3], a.transform(3), b.edge_maps()[5], b.transform(5), p.tau_clamp);
    const double ba = chamfer_cost(b.edge_maps()[5], b.transform(5), a.edge_maps()[3], a.transform(3), p.tau_clamp);
    EXPECT_DOUBLE_EQ(ab, ba);
    EXPECT_GT(ab, 0.0);
    EXPECT_LE(ab, p.tau_clamp);
}

TEST(Chamfer, ClippedSamplesCountAsClamp) {
    auto q = blank(8, 8, 4);
    add_edge(q, 2, 2, 0);
    q.outside = {outside_key(-1, 2, 0), outside_key(-2, 2, 0)};
    q.clipped = 2;
    auto t = blank(8, 8, 4);
    add_edge(t, 2, 2, 0);
    const auto dt = directional_distance_transform(t, 4.0);
    EXPECT_NEAR(fdcm_score(q, dt, 10.0), 20.0 / 3.0, 1e-12);
    t.outside = {outside_key(-1, 2, 0)};
    EXPECT_NEAR(fdcm_score(q, t, dt, 10.0), 10.0 / 3.0, 1e-12);
}

TEST(Chamfer, CanvasMismatchThrows) {
    auto q = blank(8, 8, 4);
    add_edge(q, 1, 1, 0);
    auto t = blank(9, 8, 4);
    add_edge(t, 1, 1, 0);
    EXPECT_THROW(fdcm_score(q, directional_distance_transform(t, 4.0), 10.0), std::invalid_argument);
}
