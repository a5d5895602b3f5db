#include <doctest.h>

#include <cmath>

#include "coneflat/errors.hpp"
#include "coneflat/gen.hpp"
#include "coneflat/model.hpp"
#include "helpers.hpp"

using namespace coneflat;

namespace {
const Geometry E = Geometry::euclidean();
const Geometry H = Geometry::hyperbolic();
} // namespace

TEST_CASE("place_triangle euclidean fixtures") {
    ModelPoint r = place_triangle(E, {1, 1, 1}, ModelPoint::plane(0, 0), ModelPoint::plane(1, 0),
                                  Side::Left);
    CHECK(r.x() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.y() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));

    // 3-4-5 on the x-axis: foot of the altitude at 3.2.
    ModelPoint f = place_triangle(E, {3, 4, 5}, ModelPoint::plane(0, 0), ModelPoint::plane(5, 0),
                                  Side::Left);
    CHECK(f.x() == doctest::Approx(3.2).epsilon(1e-14));
    CHECK(f.y() == doctest::Approx(2.4).epsilon(1e-14));

    ModelPoint below = place_triangle(E, {3, 4, 5}, ModelPoint::plane(0, 0),
                                      ModelPoint::plane(5, 0), Side::Right);
    CHECK(below.y() == doctest::Approx(-2.4).epsilon(1e-14));

    CHECK_THROWS_AS(place_triangle(E, {3, 4, 5}, ModelPoint::plane(0, 0),
                                   ModelPoint::plane(4.9, 0), Side::Left),
                    BaseMismatch);
}

TEST_CASE("place_triangle round trip") {
    SplitMix64 rng(5);
    for (Geometry g : {E, H}) {
        for (int i = 0; i < 300; ++i) {
            TriangleSides s = testutil::random_valid_sides(rng, 0.05, 5.0);
            ModelPoint p = model_origin(g);
            ModelPoint q = polar_point(g, s.c, rng.uniform(0, 2 * M_PI));
            ModelPoint r = place_triangle(g, s, p, q, Side::Left);
            CHECK(std::abs(distance(g, p, r) - s.b) < 1e-9);
            CHECK(std::abs(distance(g, q, r) - s.a) < 1e-9);
            if (g.is_hyperbolic()) CHECK(on_hyperboloid(r));
        }
    }
}

TEST_CASE("angle oracle on the explicit equilateral triple") {
    // Three points at radius asinh(sqrt(2/3)), 120 degrees apart, are
    // pairwise at distance acosh(2).
    double radius = std::asinh(std::sqrt(2.0 / 3.0));
    ModelPoint a = polar_point(H, radius, 0);
    ModelPoint b = polar_point(H, radius, 2 * M_PI / 3);
    ModelPoint c = polar_point(H, radius, 4 * M_PI / 3);
    CHECK(std::abs(distance(H, a, b) - 1.3169578969248166) < 1e-12);
    CHECK(std::abs(distance(H, b, c) - 1.3169578969248166) < 1e-12);
    CHECK(std::abs(hyperboloid_angle_oracle(a, b, c) - 0.84106867056793033) < 1e-9);
}

TEST_CASE("angle oracle symmetry and collinearity") {
    ModelPoint p = ModelPoint::hyperboloid(1, 0, 0);
    ModelPoint axis = polar_point(H, 0.5, 0);
    ModelPoint above = polar_point(H, 1.0, 0.7);
    ModelPoint below = polar_point(H, 1.0, -0.7);
    CHECK(std::abs(hyperboloid_angle_oracle(p, above, axis) -
                   hyperboloid_angle_oracle(p, below, axis)) < 1e-12);
    CHECK(std::abs(hyperboloid_angle_oracle(p, above, below) - 1.4) < 1e-12);

    ModelPoint far = polar_point(H, 2.0, 0);
    CHECK(hyperboloid_angle_oracle(p, axis, far) < 1e-7);
    CHECK_THROWS_AS(hyperboloid_angle_oracle(p, axis, axis), DegeneratePoints);
    CHECK_THROWS_AS(hyperboloid_angle_oracle(p, p, axis), DegeneratePoints);
}

TEST_CASE("law of cosines agrees with the hyperboloid oracle") {
    SplitMix64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        TriangleSides s = testutil::random_valid_sides(rng, 0.01, 5.0);
        auto tri = testutil::embed_triangle_by_distances(s);
        double via_points = hyperboloid_angle_oracle(tri.p, tri.q, tri.r);
        double via_sides = angle_opposite(H, s);
        CHECK(std::abs(via_points - via_sides) < 1e-9);
    }
}

TEST_CASE("klein projection straightens geodesics") {
    // Midpoint of a geodesic lands on the Klein chord.
    ModelPoint a = polar_point(H, 1.2, 0.3);
    ModelPoint b = polar_point(H, 0.8, 2.1);
    double d = distance(H, a, b);
    // Walk to the midpoint along the geodesic from a toward b.
    double ch = std::cosh(d), sh = std::sinh(d);
    ModelPoint u{(b.x0 - ch * a.x0) / sh, (b.x1 - ch * a.x1) / sh, (b.x2 - ch * a.x2) / sh};
    double hm = d / 2;
    ModelPoint mid{std::cosh(hm) * a.x0 + std::sinh(hm) * u.x0,
                   std::cosh(hm) * a.x1 + std::sinh(hm) * u.x1,
                   std::cosh(hm) * a.x2 + std::sinh(hm) * u.x2};
    Vec2 ka = klein(H, a), kb = klein(H, b), km = klein(H, mid);
    double cross = (kb.x - ka.x) * (km.y - ka.y) - (kb.y - ka.y) * (km.x - ka.x);
    CHECK(std::abs(cross) < 1e-12);
}
