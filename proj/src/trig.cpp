#include "coneflat/trig.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "coneflat/errors.hpp"

namespace coneflat {

namespace {

double clamp_cos(double x) { return std::clamp(x, -1.0, 1.0); }

// Angle opposite side a from the euclidean law of cosines.
double angle_euclidean(double a, double b, double c) {
    return std::acos(clamp_cos((b * b + c * c - a * a) / (2.0 * b * c)));
}

// Angle opposite side a from the hyperbolic law of cosines,
//   cos alpha = (cosh b cosh c - cosh a) / (sinh b sinh c).
// For large sides the quotient is evaluated as
//   (1 - cosh a / (cosh b cosh c)) / (tanh b tanh c)
// with the cosh ratio in log space, which never overflows.
double angle_hyperbolic(double a, double b, double c) {
    if (a < 350.0 && b < 350.0 && c < 350.0) {
        double cosa = (std::cosh(b) * std::cosh(c) - std::cosh(a)) / (std::sinh(b) * std::sinh(c));
        return std::acos(clamp_cos(cosa));
    }
    double ratio = std::exp(log_cosh(a) - log_cosh(b) - log_cosh(c));
    double cosa = (1.0 - ratio) / (std::tanh(b) * std::tanh(c));
    return std::acos(clamp_cos(cosa));
}

} // namespace

double log_cosh(double x) {
    if (x < 20.0) return std::log(std::cosh(x));
    // cosh x = e^x (1 + e^{-2x}) / 2
    return x + std::log1p(std::exp(-2.0 * x)) - M_LN2;
}

double arcosh_clamped(double x) {
    if (x < 1.0) {
        if (x < 1.0 - 1e-12)
            throw Error(fmt::format("arcosh argument {} below clamping range", x));
        return 0.0;
    }
    return std::acosh(x);
}

bool sides_valid(const TriangleSides& s) {
    if (!(s.a > 0) || !(s.b > 0) || !(s.c > 0)) return false;
    if (!std::isfinite(s.a) || !std::isfinite(s.b) || !std::isfinite(s.c)) return false;
    double hi = std::max({s.a, s.b, s.c});
    double sum = s.a + s.b + s.c - hi;
    return hi < sum * (1.0 - kTriangleSlack);
}

void require_valid_sides(const TriangleSides& s) {
    if (!sides_valid(s))
        throw InvalidTriangle(fmt::format("invalid triangle sides ({}, {}, {})", s.a, s.b, s.c));
}

double angle_opposite(Geometry geometry, const TriangleSides& s) {
    require_valid_sides(s);
    return geometry.is_euclidean() ? angle_euclidean(s.a, s.b, s.c)
                                   : angle_hyperbolic(s.a, s.b, s.c);
}

std::array<double, 3> corner_angles(Geometry geometry, const TriangleSides& s) {
    require_valid_sides(s);
    if (geometry.is_euclidean()) {
        return {angle_euclidean(s.a, s.b, s.c), angle_euclidean(s.b, s.c, s.a),
                angle_euclidean(s.c, s.a, s.b)};
    }
    return {angle_hyperbolic(s.a, s.b, s.c), angle_hyperbolic(s.b, s.c, s.a),
            angle_hyperbolic(s.c, s.a, s.b)};
}

double triangle_area(Geometry geometry, const TriangleSides& sides) {
    require_valid_sides(sides);
    if (geometry.is_euclidean()) {
        // Kahan's ordering: sort so a >= b >= c, then
        //   16 A^2 = (a+(b+c)) (c-(a-b)) (c+(a-b)) (a+(b-c))
        double a = sides.a, b = sides.b, c = sides.c;
        if (a < b) std::swap(a, b);
        if (b < c) std::swap(b, c);
        if (a < b) std::swap(a, b);
        double t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
        return 0.25 * std::sqrt(std::max(t, 0.0));
    }
    auto ang = corner_angles(geometry, sides);
    return std::max(M_PI - ang[0] - ang[1] - ang[2], 0.0);
}

double deform_length(Geometry geometry, double length, double t) {
    if (!(length > 0)) throw Error(fmt::format("deform_length: nonpositive length {}", length));
    if (!(t >= 0)) throw Error(fmt::format("deform_length: negative t {}", t));
    if (t == 0.0) return length;
    if (geometry.is_euclidean()) return std::sqrt(length * length + t);
    // arcosh(e^t cosh l) = t + log_cosh(l) + log(1 + sqrt(1 - e^{-2(t + log_cosh l)}))
    double u = log_cosh(length);
    double one_minus = -std::expm1(-2.0 * (t + u));
    return t + u + std::log1p(std::sqrt(one_minus));
}

TriangleSides deformed_triangle(Geometry geometry, const TriangleSides& sides, double t) {
    require_valid_sides(sides);
    TriangleSides out{sides.a, deform_length(geometry, sides.b, t),
                      deform_length(geometry, sides.c, t)};
    if (!sides_valid(out))
        throw InternalError(fmt::format(
            "deformed triangle ({}, {}, {}) invalid at t={}; existence is guaranteed",
            out.a, out.b, out.c, t));
    return out;
}

} // namespace coneflat
