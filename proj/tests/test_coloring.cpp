#include <gtest/gtest.h>

#include <random>
#include <set>

#include "equidiss/coloring.hpp"
#include "fixtures.hpp"

using namespace equidiss;
using fixtures::q;

namespace {

// Power of two dividing a nonzero integer, by repeated halving.
long twos(mpz_class z) {
    long k = 0;
    if (z < 0) z = -z;
    while (z % 2 == 0) {
        z /= 2;
        ++k;
    }
    return k;
}

std::vector<Point<Rational>> eight_corner_polygon() {
    return {{q(0), q(0)}, {q(2), q(0)}, {q(3), q(3)}, {q(3, 2), q(5, 2)},
            {q(2), q(5)}, {q(-2), q(4)}, {q(0), q(3)}, {q(-2), q(2)}};
}

}  // namespace

TEST(Color, Examples) {
    EXPECT_EQ(color_point(q(0), q(0)), Color::Blue);
    EXPECT_EQ(color_point(q(1), q(0)), Color::Red);
    EXPECT_EQ(color_point(q(0), q(1)), Color::Green);
    EXPECT_EQ(color_point(q(1, 2), q(1, 2)), Color::Red);
    EXPECT_EQ(color_point(q(1), q(1)), Color::Red);
    EXPECT_EQ(color_point(q(2), q(1, 4)), Color::Green);
}

TEST(Color, ColorfulAreaExamples) {
    EXPECT_EQ(colorful_area_check({q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}), TwoAdicValue::pow2(-1));
    EXPECT_THROW(colorful_area_check({q(0), q(0)}, {q(1), q(0)}, {q(1, 2), q(1, 2)}), NotColorful);
    EXPECT_THROW(colorful_area_check({q(0), q(0)}, {q(3), q(1)}, {q(1, 2), q(1, 2)}), NotColorful);
}

TEST(Color, BruteForceColorfulTriples) {
    // Points with coordinates a/b, |a| <= 4, b in {1,2,3,4}.
    std::vector<Point<Rational>> pts;
    for (long b = 1; b <= 4; ++b)
        for (long a1 = -4; a1 <= 4; ++a1)
            for (long a2 = -4; a2 <= 4; ++a2) pts.push_back({q(a1, b), q(a2, b)});
    std::mt19937_64 rng(5);
    std::size_t checked = 0;
    for (int i = 0; i < 200000 && checked < 20000; ++i) {
        const auto& p1 = pts[rng() % pts.size()];
        const auto& p2 = pts[rng() % pts.size()];
        const auto& p3 = pts[rng() % pts.size()];
        if (!is_colorful(color_point(p1), color_point(p2), color_point(p3))) continue;
        ++checked;
        Rational twice = (p2.x - p1.x) * (p3.y - p1.y) - (p3.x - p1.x) * (p2.y - p1.y);
        ASSERT_FALSE(twice.is_zero());
        // area = twice / 2; value >= 2 means the denominator carries at least one more 2 than the numerator.
        long e = twos(twice.numerator()) - twos(twice.denominator()) - 1;
        EXPECT_LE(e, -1);
        EXPECT_EQ(colorful_area_check(p1, p2, p3), TwoAdicValue::pow2(e));
    }
    EXPECT_GE(checked, 1000u);
}

TEST(Color, RationalLinesCarryAtMostTwoColors) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 24);
    for (int line = 0; line < 1000; ++line) {
        Point<Rational> p0{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
        Point<Rational> dir{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
        if (dir.x.is_zero() && dir.y.is_zero()) dir.x = q(1);
        std::set<Color> seen;
        for (int s = 0; s < 50; ++s) {
            Rational t(num(rng), den(rng));
            seen.insert(color_point(p0.x + t * dir.x, p0.y + t * dir.y));
        }
        EXPECT_LE(seen.size(), 2u);
    }
}

TEST(Certify, ThreeTriangleFixture) {
    auto f = fixtures::three_triangles();
    auto c = certify(f.d, f.phi);
    EXPECT_EQ(c.rb_boundary_edge_count, 1u);
    ASSERT_TRUE(c.colorful_face.has_value());
    const auto& face = *c.colorful_face;
    std::set<NodeId> nodes(face.nodes.begin(), face.nodes.end());
    EXPECT_EQ(nodes, (std::set<NodeId>{0, 2, 3}));
    EXPECT_EQ(c.corner_colors[0], Color::Blue);
    EXPECT_EQ(c.corner_colors[2], Color::Red);
    EXPECT_EQ(c.corner_colors[3], Color::Green);
    EXPECT_GE(face.area_value, TwoAdicValue::pow2(-1));
}

TEST(Certify, FiveTriangleFixture) {
    auto f = fixtures::five_with_chain();
    auto c = certify(f.d, f.phi);
    EXPECT_EQ(c.rb_boundary_edge_count, 1u);
    ASSERT_TRUE(c.colorful_face.has_value());
    std::set<NodeId> nodes(c.colorful_face->nodes.begin(), c.colorful_face->nodes.end());
    EXPECT_EQ(nodes, (std::set<NodeId>{0, 4, 3}));  // (0,0), (1/2,0), (0,1)
}

TEST(Certify, ParityCongruence) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> num(1, 63);
    for (const auto& f : fixtures::all()) {
        auto c = certify(f.d, f.phi);
        EXPECT_EQ(c.colorful_face_count % 2, c.rb_boundary_edge_count % 2) << f.name;
    }
    // Interior nodes moved to random rational positions keep the congruence.
    auto f = fixtures::four_center();
    for (int i = 0; i < 200; ++i) {
        f.phi[4] = {Rational(num(rng), 64), Rational(num(rng), 64)};
        auto c = certify(f.d, f.phi);
        EXPECT_EQ(c.colorful_face_count % 2, c.rb_boundary_edge_count % 2);
        EXPECT_TRUE(c.colorful_face.has_value());
    }
}

TEST(Certify, RejectsUnconstrainedMaps) {
    auto f = fixtures::five_with_chain();
    f.phi[5] = {q(2, 3), q(1, 2)};
    EXPECT_THROW(certify(f.d, f.phi), NotConstrained);
    auto g = fixtures::three_triangles();
    g.phi[1] = {q(2), q(0)};
    EXPECT_THROW(certify(g.d, g.phi), NotConstrained);
}

TEST(Certify, RejectsBigFloatFiles) {
    auto f = fixtures::three_triangles();
    FramedMap<BigFloat> phi;
    for (const auto& p : f.phi.coords) phi.coords.push_back({BigFloat(p.x, 64), BigFloat(p.y, 64)});
    DissectionFile file{f.d, phi, 64, nlohmann::json::object()};
    EXPECT_THROW(certify(file), IrrationalCoordinates);
}

TEST(Certify, JsonShape) {
    auto f = fixtures::three_triangles();
    auto j = certificate_to_json(certify(f.d, f.phi));
    EXPECT_EQ(j["rb_edges"], 1);
    EXPECT_EQ(j["colors"]["0"], "B");
    EXPECT_TRUE(j["colorful_face"].is_array());
}

TEST(RbParity, UnitSquare) {
    auto r = rb_side_parity({{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}});
    EXPECT_EQ(r.count, 1u);
    EXPECT_TRUE(r.odd());
}

TEST(RbParity, EightCornerPolygon) {
    auto poly = eight_corner_polygon();
    std::vector<char> expected{'B', 'B', 'R', 'R', 'G', 'B', 'G', 'B'};
    for (std::size_t i = 0; i < poly.size(); ++i) EXPECT_EQ(color_letter(color_point(poly[i])), expected[i]);
    auto r = rb_side_parity(poly);
    EXPECT_EQ(r.count, 1u);
    EXPECT_TRUE(is_red_blue(color_point(poly[1]), color_point(poly[2])));
    // The listed corners enclose 59/4, not an integer.
    EXPECT_EQ(detail::shoelace(poly), q(59, 4));
}

TEST(RbParity, TranslatedSquare) {
    auto r = rb_side_parity({{q(0), q(2)}, {q(1), q(2)}, {q(1), q(3)}, {q(0), q(3)}});
    EXPECT_EQ(color_point(q(0), q(2)), Color::Blue);
    EXPECT_EQ(color_point(q(1), q(2)), Color::Red);
    EXPECT_EQ(color_point(q(1), q(3)), Color::Red);
    EXPECT_EQ(color_point(q(0), q(3)), Color::Green);
    EXPECT_EQ(r.count, 1u);
}
