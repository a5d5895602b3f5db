#include "coneflat/model.hpp"

#include <cmath>
#include <fmt/format.h>

#include "coneflat/errors.hpp"

namespace coneflat {

namespace {

// Minkowski cross product: orthogonal to both arguments under <,>.
// For p on the hyperboloid and u a unit tangent, J(p x u) is the unit
// tangent completing a positively oriented frame.
ModelPoint minkowski_cross(const ModelPoint& p, const ModelPoint& u) {
    double cx0 = p.x1 * u.x2 - p.x2 * u.x1;
    double cx1 = p.x2 * u.x0 - p.x0 * u.x2;
    double cx2 = p.x0 * u.x1 - p.x1 * u.x0;
    return {-cx0, cx1, cx2};
}

ModelPoint renormalized(const ModelPoint& p) {
    double n = std::sqrt(-minkowski_dot(p, p));
    return {p.x0 / n, p.x1 / n, p.x2 / n};
}

} // namespace

double minkowski_dot(const ModelPoint& p, const ModelPoint& q) {
    return -p.x0 * q.x0 + p.x1 * q.x1 + p.x2 * q.x2;
}

bool on_hyperboloid(const ModelPoint& p) {
    return std::abs(minkowski_dot(p, p) + 1.0) <= 1e-9 && p.x0 >= 1.0 - 1e-9;
}

double distance(Geometry geometry, const ModelPoint& p, const ModelPoint& q) {
    if (geometry.is_euclidean()) return std::hypot(q.x1 - p.x1, q.x2 - p.x2);
    return arcosh_clamped(-minkowski_dot(p, q));
}

Vec2 klein(Geometry, const ModelPoint& p) { return {p.x1 / p.x0, p.x2 / p.x0}; }

ModelPoint model_origin(Geometry geometry) {
    return geometry.is_euclidean() ? ModelPoint::plane(0, 0) : ModelPoint::hyperboloid(1, 0, 0);
}

ModelPoint polar_point(Geometry geometry, double r, double phi) {
    if (geometry.is_euclidean()) return ModelPoint::plane(r * std::cos(phi), r * std::sin(phi));
    return {std::cosh(r), std::sinh(r) * std::cos(phi), std::sinh(r) * std::sin(phi)};
}

ModelPoint place_triangle(Geometry geometry, const TriangleSides& sides,
                          const ModelPoint& base_p, const ModelPoint& base_q, Side side) {
    require_valid_sides(sides);
    double base = distance(geometry, base_p, base_q);
    if (std::abs(base - sides.c) > 1e-9)
        throw BaseMismatch(fmt::format("base length {} disagrees with side c = {}", base, sides.c));

    double alpha = angle_opposite(geometry, sides); // angle at base_p
    double sgn = side == Side::Left ? 1.0 : -1.0;

    if (geometry.is_euclidean()) {
        double ux = (base_q.x1 - base_p.x1) / base;
        double uy = (base_q.x2 - base_p.x2) / base;
        // CCW normal of the base direction; Left is the positive half-plane.
        double nx = -uy, ny = ux;
        double dx = sides.b * (std::cos(alpha) * ux + sgn * std::sin(alpha) * nx);
        double dy = sides.b * (std::cos(alpha) * uy + sgn * std::sin(alpha) * ny);
        return ModelPoint::plane(base_p.x1 + dx, base_p.x2 + dy);
    }

    // Unit tangent at base_p toward base_q: Q = cosh(c) P + sinh(c) U.
    double ch = std::cosh(base), sh = std::sinh(base);
    ModelPoint u{(base_q.x0 - ch * base_p.x0) / sh, (base_q.x1 - ch * base_p.x1) / sh,
                 (base_q.x2 - ch * base_p.x2) / sh};
    ModelPoint n = minkowski_cross(base_p, u);
    double cb = std::cosh(sides.b), sb = std::sinh(sides.b);
    double ca = std::cos(alpha), sa = sgn * std::sin(alpha);
    ModelPoint r{cb * base_p.x0 + sb * (ca * u.x0 + sa * n.x0),
                 cb * base_p.x1 + sb * (ca * u.x1 + sa * n.x1),
                 cb * base_p.x2 + sb * (ca * u.x2 + sa * n.x2)};
    return renormalized(r);
}

double hyperboloid_angle_oracle(const ModelPoint& p, const ModelPoint& q, const ModelPoint& r) {
    if (distance(Geometry::hyperbolic(), p, q) < 1e-12 ||
        distance(Geometry::hyperbolic(), p, r) < 1e-12 ||
        distance(Geometry::hyperbolic(), q, r) < 1e-12)
        throw DegeneratePoints("angle oracle needs three distinct points");

    // Tangential parts at p: w = x + <p,x> p is Minkowski-orthogonal to p.
    auto tangent = [&](const ModelPoint& x) {
        double d = minkowski_dot(p, x);
        return ModelPoint{x.x0 + d * p.x0, x.x1 + d * p.x1, x.x2 + d * p.x2};
    };
    ModelPoint wq = tangent(q), wr = tangent(r);
    double nq = std::sqrt(minkowski_dot(wq, wq));
    double nr = std::sqrt(minkowski_dot(wr, wr));
    double cosang = minkowski_dot(wq, wr) / (nq * nr);
    return std::acos(std::clamp(cosang, -1.0, 1.0));
}

} // namespace coneflat
