#pragma once

#include <array>

#include "coneflat/geometry.hpp"

namespace coneflat {

// Relative slack for the strict triangle inequality: a triple is rejected
// when max-side >= (sum of the other two) * (1 - kTriangleSlack).
inline constexpr double kTriangleSlack = 1e-12;

struct TriangleSides {
    double a = 0; // the side opposite the angle of interest
    double b = 0;
    double c = 0;
};

// True iff all sides are positive, finite, and satisfy the strict triangle
// inequalities with relative slack kTriangleSlack.
bool sides_valid(const TriangleSides& sides);

// Throws InvalidTriangle with a diagnostic if sides_valid fails.
void require_valid_sides(const TriangleSides& sides);

// Interior angle opposite side a, in (0, pi). Law of cosines in the model
// geometry; cos values are clamped to [-1, 1] before acos. The hyperbolic
// branch is safe for sides far beyond the overflow range of cosh.
double angle_opposite(Geometry geometry, const TriangleSides& sides);

// All three angles, opposite a, b, c in that order.
std::array<double, 3> corner_angles(Geometry geometry, const TriangleSides& sides);

// Triangle area. Euclidean: Heron in Kahan's numerically stable ordering.
// Hyperbolic: angle defect pi - (alpha + beta + gamma).
double triangle_area(Geometry geometry, const TriangleSides& sides);

// Length of a side incident to the deformed vertex after deformation
// parameter t >= 0. Euclidean: sqrt(l^2 + t). Hyperbolic:
// arcosh(e^t cosh l), evaluated in log space so t may exceed 700.
// Identity at t = 0, strictly increasing in t.
double deform_length(Geometry geometry, double length, double t);

// The triangle with side a fixed and b, c replaced by their deformed
// lengths. Exists for every t >= 0; a numeric violation of the triangle
// inequality raises InternalError.
TriangleSides deformed_triangle(Geometry geometry, const TriangleSides& sides, double t);

// arcosh with the clamping rule: arguments in [1 - 1e-12, 1] are treated as
// exactly 1; smaller arguments throw Error.
double arcosh_clamped(double x);

// log(cosh(x)) for x >= 0 without overflow.
double log_cosh(double x);

} // namespace coneflat
