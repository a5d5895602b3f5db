#include <doctest.h>

#include <cmath>

#include "coneflat/errors.hpp"
#include "coneflat/gen.hpp"
#include "coneflat/trig.hpp"
#include "helpers.hpp"

using namespace coneflat;

namespace {
const Geometry E = Geometry::euclidean();
const Geometry H = Geometry::hyperbolic();
const double kArcosh2 = 1.3169578969248166; // acosh(2)
} // namespace

TEST_CASE("angle_opposite euclidean") {
    CHECK(angle_opposite(E, {1, 1, 1}) == doctest::Approx(M_PI / 3).epsilon(1e-14));
    CHECK(angle_opposite(E, {5, 3, 4}) == doctest::Approx(M_PI / 2).epsilon(1e-14));
    CHECK_THROWS_AS(angle_opposite(E, {2.1, 1, 1}), InvalidTriangle);
    CHECK_THROWS_AS(angle_opposite(E, {2.0, 1, 1}), InvalidTriangle); // degenerate
    CHECK_THROWS_AS(angle_opposite(E, {-1, 1, 1}), InvalidTriangle);
}

TEST_CASE("angle_opposite hyperbolic") {
    // Equilateral with cosh(side) = 2: cos alpha = 2/3.
    CHECK(angle_opposite(H, {kArcosh2, kArcosh2, kArcosh2}) ==
          doctest::Approx(0.84106867056793033).epsilon(1e-13));
    // Right angle iff cosh a = cosh b cosh c.
    double hyp = std::acosh(std::cosh(1.0) * std::cosh(1.0));
    CHECK(std::abs(angle_opposite(H, {hyp, 1, 1}) - M_PI / 2) < 1e-9);
}

TEST_CASE("angle sums") {
    SplitMix64 rng(11);
    for (int i = 0; i < 300; ++i) {
        TriangleSides s = testutil::random_valid_sides(rng, 0.01, 10.0);
        auto ae = corner_angles(E, s);
        CHECK(std::abs(ae[0] + ae[1] + ae[2] - M_PI) < 1e-10);
        auto ah = corner_angles(H, s);
        CHECK(ah[0] + ah[1] + ah[2] < M_PI);
    }
}

TEST_CASE("triangle_area") {
    CHECK(triangle_area(E, {3, 4, 5}) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(triangle_area(E, {1, 1, 1}) == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-14));
    CHECK(triangle_area(H, {kArcosh2, kArcosh2, kArcosh2}) ==
          doctest::Approx(0.61838664188600223).epsilon(1e-12));
}

TEST_CASE("deform_length") {
    CHECK(deform_length(E, 3, 16) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(deform_length(H, 0.7, 0) == 0.7); // exact identity at t = 0
    CHECK(deform_length(E, 0.7, 0) == 0.7);
    // e^t cosh l = 3 for t = ln(3/2), cosh l = 2.
    CHECK(deform_length(H, kArcosh2, std::log(1.5)) ==
          doctest::Approx(1.7627471740390861).epsilon(1e-13));
}

TEST_CASE("deform_length strictly increasing in t") {
    SplitMix64 rng(23);
    for (int i = 0; i < 100; ++i) {
        double len = rng.uniform(0.01, 10.0);
        for (Geometry g : {E, H}) {
            double prev = deform_length(g, len, 0.0);
            CHECK(prev == len);
            for (double t : {1e-6, 1e-3, 0.1, 1.0, 10.0, 100.0, 1e4, 1e8}) {
                double next = deform_length(g, len, t);
                CHECK(next > prev);
                prev = next;
            }
        }
    }
}

TEST_CASE("deform_length survives huge t") {
    double l = deform_length(H, 2.0, 800.0);
    CHECK(std::isfinite(l));
    CHECK(l > 800.0);
    // and feeds back into a finite angle
    TriangleSides s = deformed_triangle(H, {1.0, 2.0, 2.5}, 800.0);
    CHECK(std::isfinite(angle_opposite(H, s)));
}

TEST_CASE("deformed_triangle") {
    TriangleSides s = deformed_triangle(E, {1, 0.9, 0.9}, 0.19);
    CHECK(s.a == 1.0);
    CHECK(s.b == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.c == doctest::Approx(1.0).epsilon(1e-15));

    TriangleSides id = deformed_triangle(H, {1, 0.9, 0.9}, 0.0);
    CHECK(id.b == 0.9);
    CHECK(id.c == 0.9);

    // Angle decay: opposite angle ~ a / sqrt(t) at large t.
    TriangleSides far = deformed_triangle(E, {1, 1, 1}, 1e10);
    CHECK(angle_opposite(E, far) < 1e-4);
}

TEST_CASE("deformation grows area; the opposite angle dies off") {
    // The opposite angle is NOT monotone in t (sides (1, 0.02, 1.01) at
    // t = 0.01 widen it); only its limit is guaranteed.
    SplitMix64 rng(42);
    for (Geometry g : {E, H}) {
        for (int i = 0; i < 300; ++i) {
            TriangleSides s = testutil::random_valid_sides(rng, 0.01, 10.0);
            double area0 = triangle_area(g, s);
            for (double t : {0.25, 1.0, 4.0, 16.0, 64.0})
                CHECK(triangle_area(g, deformed_triangle(g, s, t)) > area0);
            double limit_angle = angle_opposite(g, deformed_triangle(g, s, 1e8));
            CHECK(limit_angle < 1e-2);
            CHECK(limit_angle < angle_opposite(g, s));
        }
    }
}

TEST_CASE("the opposite angle can transiently grow") {
    TriangleSides s{1.0, 0.02, 1.01};
    double before = angle_opposite(E, s);
    double bumped = angle_opposite(E, deformed_triangle(E, s, 0.01));
    CHECK(bumped > before);
    CHECK(angle_opposite(E, deformed_triangle(E, s, 1e8)) < 1e-2);
}

TEST_CASE("arcosh clamping") {
    CHECK(arcosh_clamped(1.0) == 0.0);
    CHECK(arcosh_clamped(1.0 - 5e-13) == 0.0);
    CHECK_THROWS_AS(arcosh_clamped(1.0 - 1e-11), Error);
    CHECK(arcosh_clamped(2.0) == doctest::Approx(kArcosh2).epsilon(1e-15));
}
