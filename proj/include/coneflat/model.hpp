#pragma once

#include "coneflat/geometry.hpp"
#include "coneflat/trig.hpp"

namespace coneflat {

struct Vec2 {
    double x = 0, y = 0;
};

enum class Side { Left, Right };

// A point of the model plane. Euclidean points live in the xy-plane;
// hyperbolic points are hyperboloid coordinates (x0, x1, x2) with
// Minkowski form <x,x> = -x0^2 + x1^2 + x2^2 = -1 and x0 >= 1.
struct ModelPoint {
    double x0 = 1, x1 = 0, x2 = 0;

    static ModelPoint plane(double x, double y) { return {1.0, x, y}; }
    static ModelPoint hyperboloid(double x0, double x1, double x2) { return {x0, x1, x2}; }

    double x() const { return x1; }
    double y() const { return x2; }
};

double minkowski_dot(const ModelPoint& p, const ModelPoint& q);

// Checks the hyperboloid constraint <x,x> = -1 within 1e-9 and x0 >= 1.
bool on_hyperboloid(const ModelPoint& p);

// Geodesic distance between two points of the same model plane.
// Hyperbolic: arcosh(-<p,q>) with the arcosh clamping rule.
double distance(Geometry geometry, const ModelPoint& p, const ModelPoint& q);

// Coordinates in which geodesics are straight segments: the plane itself
// (euclidean) or the Klein projection (x1/x0, x2/x0) of the hyperboloid.
Vec2 klein(Geometry geometry, const ModelPoint& p);

// The base point of developments: origin (euclidean) or (1,0,0).
ModelPoint model_origin(Geometry geometry);

// Point at geodesic distance r from `center` in direction `phi`, where phi
// is measured from center's reference direction. For the model origin the
// reference direction is the positive x1-axis.
ModelPoint polar_point(Geometry geometry, double r, double phi);

// Third vertex of a triangle with the given sides placed on the oriented
// base base_p -> base_q. The base must have length sides.c (within 1e-9, or
// BaseMismatch); the result is at distance sides.b from base_p and sides.a
// from base_q, on the requested side of the base geodesic.
ModelPoint place_triangle(Geometry geometry, const TriangleSides& sides,
                          const ModelPoint& base_p, const ModelPoint& base_q, Side side);

// Angle at p between the geodesics pq and pr, measured from the Minkowski
// projections of the q- and r-directions onto the tangent plane at p.
// Independent of the law-of-cosines route; serves as its oracle.
double hyperboloid_angle_oracle(const ModelPoint& p, const ModelPoint& q, const ModelPoint& r);

} // namespace coneflat
