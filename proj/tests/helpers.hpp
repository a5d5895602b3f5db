#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "coneflat/gen.hpp"
#include "coneflat/mesh.hpp"
#include "coneflat/model.hpp"

namespace testutil {

using namespace coneflat;

// Builds a euclidean mesh from planar points and counterclockwise vertex
// triples, measuring every edge length from the coordinates.
inline ConeMesh mesh_from_points(const std::vector<Vec2>& points,
                                 const std::vector<std::array<int, 3>>& tris) {
    std::map<std::pair<int, int>, int> edge_ids;
    std::vector<double> lengths;
    auto edge = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = edge_ids.find(key);
        if (it != edge_ids.end()) return it->second;
        int id = static_cast<int>(lengths.size());
        lengths.push_back(std::hypot(points[a].x - points[b].x, points[a].y - points[b].y));
        edge_ids.emplace(key, id);
        return id;
    };
    std::vector<Triangle> triangles;
    for (const auto& t : tris) {
        double cross = (points[t[1]].x - points[t[0]].x) * (points[t[2]].y - points[t[0]].y) -
                       (points[t[1]].y - points[t[0]].y) * (points[t[2]].x - points[t[0]].x);
        if (cross <= 0) throw std::runtime_error("test triangle not counterclockwise");
        triangles.push_back({{t[0], t[1], t[2]}, {edge(t[0], t[1]), edge(t[1], t[2]), edge(t[2], t[0])}});
    }
    return ConeMesh(Geometry::euclidean(), std::move(lengths), std::move(triangles),
                    static_cast<int>(points.size()));
}

// Square annulus: two boundary cycles, Euler characteristic 0.
inline ConeMesh make_annulus() {
    std::vector<Vec2> pts = {{2, 0}, {0, 2}, {-2, 0}, {0, -2}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::vector<std::array<int, 3>> tris;
    for (int i = 0; i < 4; ++i) {
        int j = (i + 1) % 4;
        tris.push_back({i, j, 4 + i});
        tris.push_back({j, 4 + j, 4 + i});
    }
    return mesh_from_points(pts, tris);
}

// Mirror-symmetric disk: hexagon boundary, center vertex 6, interior
// neighbors 7 (left) and 8 (right) at exactly mirrored coordinates, so the
// their cone angles are bitwise equal. Deforming the center flattens both
// neighbors at the same t0.
inline ConeMesh symmetric_two_neighbor_disk() {
    const double s3 = std::sqrt(3.0) / 2;
    const double rho = 0.6, qx = 0.3;
    std::vector<Vec2> pts = {{1, 0}, {0.5, s3}, {-0.5, s3}, {-1, 0}, {-0.5, -s3},
                             {0.5, -s3}, {0, 0}, {-qx, 0}, {qx, 0}};
    std::vector<std::array<int, 3>> faces = {{6, 1, 2}, {6, 2, 7}, {7, 2, 3}, {7, 3, 4},
                                             {6, 7, 4}, {6, 4, 5}, {6, 5, 8}, {8, 5, 0},
                                             {8, 0, 1}, {6, 8, 1}};
    auto to_hyperboloid = [&](const Vec2& p) {
        double n2 = (p.x * p.x + p.y * p.y) * rho * rho;
        double x0 = 1.0 / std::sqrt(1.0 - n2);
        return ModelPoint::hyperboloid(x0, p.x * rho * x0, p.y * rho * x0);
    };
    std::map<std::pair<int, int>, int> edge_ids;
    std::vector<double> lengths;
    auto edge = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = edge_ids.find(key);
        if (it != edge_ids.end()) return it->second;
        int id = static_cast<int>(lengths.size());
        lengths.push_back(
            distance(Geometry::hyperbolic(), to_hyperboloid(pts[a]), to_hyperboloid(pts[b])));
        edge_ids.emplace(key, id);
        return id;
    };
    std::vector<Triangle> tris;
    for (const auto& f : faces)
        tris.push_back({{f[0], f[1], f[2]}, {edge(f[0], f[1]), edge(f[1], f[2]), edge(f[2], f[0])}});
    return ConeMesh(Geometry::euclidean(), std::move(lengths), std::move(tris), 9);
}

// Random sides in (lo, hi] that pass the validity gate.
inline TriangleSides random_valid_sides(SplitMix64& rng, double lo, double hi) {
    for (;;) {
        TriangleSides s{rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
        if (sides_valid(s)) return s;
    }
}

// Distance-only hyperboloid embedding of a triangle: p at the base point,
// q on the x1-axis, r in the upper half plane. Uses nothing but cosh/sinh
// of the side lengths, so it is independent of any angle formula.
struct EmbeddedTriangle {
    ModelPoint p, q, r;
};

inline EmbeddedTriangle embed_triangle_by_distances(const TriangleSides& s) {
    // distances: pq = c, pr = b, qr = a
    ModelPoint p = ModelPoint::hyperboloid(1, 0, 0);
    ModelPoint q = ModelPoint::hyperboloid(std::cosh(s.c), std::sinh(s.c), 0);
    double r0 = std::cosh(s.b);
    double r1 = (std::cosh(s.c) * std::cosh(s.b) - std::cosh(s.a)) / std::sinh(s.c);
    double r2sq = r0 * r0 - 1.0 - r1 * r1;
    ModelPoint r = ModelPoint::hyperboloid(r0, r1, std::sqrt(std::max(r2sq, 0.0)));
    return {p, q, r};
}

// Polygon area oracles on developed link polygons. Euclidean: shoelace.
// Hyperbolic: (n-2) pi minus the interior angles, measured with the
// hyperboloid oracle rather than the law of cosines. Reflex corners (the
// polygon is counterclockwise, so they show up as negatively oriented
// corner triples in Klein coordinates) contribute 2 pi minus the measured
// angle.
inline double polygon_area_oracle(Geometry geometry, const std::vector<ModelPoint>& poly) {
    const int n = static_cast<int>(poly.size());
    if (geometry.is_euclidean()) {
        double twice = 0;
        for (int i = 0; i < n; ++i) {
            const ModelPoint& a = poly[i];
            const ModelPoint& b = poly[(i + 1) % n];
            twice += a.x() * b.y() - a.y() * b.x();
        }
        return 0.5 * twice;
    }
    double angle_sum = 0;
    for (int i = 0; i < n; ++i) {
        const ModelPoint& prev = poly[(i + n - 1) % n];
        const ModelPoint& next = poly[(i + 1) % n];
        double angle = hyperboloid_angle_oracle(poly[i], prev, next);
        Vec2 a = klein(geometry, prev), b = klein(geometry, poly[i]), c = klein(geometry, next);
        double orient = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        angle_sum += orient >= 0 ? angle : 2 * M_PI - angle;
    }
    return (n - 2) * M_PI - angle_sum;
}

} // namespace testutil
