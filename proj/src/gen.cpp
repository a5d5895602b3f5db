#include "coneflat/gen.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>

#include "coneflat/errors.hpp"
#include "coneflat/model.hpp"

namespace coneflat {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kMaxRejectionRounds = 10000;
constexpr double kCurvatureMargin = 1e-3; // required omega - 2*pi at interior vertices
constexpr double kKleinRadius = 0.82;     // random disks live in this Klein disk

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

struct PlanarBuilder {
    std::vector<Vec2> points;
    std::vector<std::array<int, 2>> edge_ends;
    std::map<std::pair<int, int>, int> edge_ids;
    std::vector<Triangle> triangles;

    int edge(int u, int v) {
        auto key = std::minmax(u, v);
        auto it = edge_ids.find(key);
        if (it != edge_ids.end()) return it->second;
        int id = static_cast<int>(edge_ends.size());
        edge_ends.push_back({key.first, key.second});
        edge_ids.emplace(key, id);
        return id;
    }

    void add_triangle(int a, int b, int c) {
        triangles.push_back({{a, b, c}, {edge(a, b), edge(b, c), edge(c, a)}});
    }

    double area(const Triangle& t) const {
        const Vec2& p = points[t.v[0]];
        const Vec2& q = points[t.v[1]];
        const Vec2& r = points[t.v[2]];
        return 0.5 * ((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x));
    }
};

// Straight-line triangulated polygon: boundary_count vertices on the unit
// circle (fan-triangulated from vertex 0), then interior vertices inserted
// by 1-to-3 splits of large triangles.
PlanarBuilder build_planar_disk(SplitMix64& rng, int interior_count, int boundary_count) {
    PlanarBuilder b;
    for (int k = 0; k < boundary_count; ++k) {
        double theta = (kTwoPi / boundary_count) * (k + 0.4 * (rng.next_double() - 0.5));
        b.points.push_back({std::cos(theta), std::sin(theta)});
    }
    for (int k = 1; k + 1 < boundary_count; ++k) b.add_triangle(0, k, k + 1);

    for (int i = 0; i < interior_count; ++i) {
        double max_area = 0;
        for (const Triangle& t : b.triangles) max_area = std::max(max_area, b.area(t));
        std::vector<int> candidates;
        for (int t = 0; t < static_cast<int>(b.triangles.size()); ++t)
            if (b.area(b.triangles[t]) >= 0.4 * max_area) candidates.push_back(t);
        int target = candidates[rng.below(static_cast<uint32_t>(candidates.size()))];

        Triangle old = b.triangles[target];
        double w0 = 0.25 + 0.5 * rng.next_double();
        double w1 = 0.25 + 0.5 * rng.next_double();
        double w2 = 0.25 + 0.5 * rng.next_double();
        double sum = w0 + w1 + w2;
        const Vec2& p = b.points[old.v[0]];
        const Vec2& q = b.points[old.v[1]];
        const Vec2& r = b.points[old.v[2]];
        int w = static_cast<int>(b.points.size());
        b.points.push_back({(w0 * p.x + w1 * q.x + w2 * r.x) / sum,
                            (w0 * p.y + w1 * q.y + w2 * r.y) / sum});

        b.triangles[target] = {{old.v[0], old.v[1], w},
                               {old.e[0], b.edge(old.v[1], w), b.edge(w, old.v[0])}};
        b.add_triangle(old.v[1], old.v[2], w);
        b.add_triangle(old.v[2], old.v[0], w);
    }
    return b;
}

ModelPoint to_hyperboloid(const Vec2& klein_point) {
    double n2 = klein_point.x * klein_point.x + klein_point.y * klein_point.y;
    double x0 = 1.0 / std::sqrt(1.0 - n2);
    return ModelPoint::hyperboloid(x0, klein_point.x * x0, klein_point.y * x0);
}

} // namespace

ConeMesh gen_cone_disk(const ConeDiskSpec& spec) {
    if (spec.sectors < 3) throw InvalidSpec(fmt::format("need >= 3 sectors, got {}", spec.sectors));
    if (!(spec.legs > 0)) throw InvalidSpec(fmt::format("nonpositive legs {}", spec.legs));

    double base_length;
    if (spec.geometry.is_euclidean()) {
        base_length = spec.base;
        if (!(base_length > 0) || base_length >= 2.0 * spec.legs * (1.0 - kTriangleSlack))
            throw InvalidSpec(fmt::format("degenerate sector: base {} with legs {}",
                                          base_length, spec.legs));
    } else {
        double apex = spec.base;
        if (!(apex > 0) || apex >= M_PI)
            throw InvalidSpec(fmt::format("sector apex angle {} outside (0, pi)", apex));
        double ch = std::cosh(spec.legs);
        double sh = std::sinh(spec.legs);
        base_length = arcosh_clamped(ch * ch - sh * sh * std::cos(apex));
    }

    const int n = spec.sectors;
    std::vector<double> lengths(2 * n);
    for (int i = 0; i < n; ++i) lengths[i] = spec.legs;        // legs: apex to rim
    for (int i = 0; i < n; ++i) lengths[n + i] = base_length;  // rim edges
    std::vector<Triangle> tris(n);
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        tris[i] = {{0, 1 + i, 1 + j}, {i, n + i, j}};
    }

    std::map<std::string, std::string> meta{
        {"generator", "cone"},
        {"sectors", std::to_string(n)},
        {"legs", format_double(spec.legs)},
        {spec.geometry.is_euclidean() ? "base" : "sector_angle", format_double(spec.base)},
    };
    return ConeMesh(spec.geometry, std::move(lengths), std::move(tris), n + 1, std::move(meta));
}

ConeMesh gen_random_disk(uint64_t seed, int interior_count, int boundary_count,
                         Geometry geometry) {
    if (interior_count < 0 || boundary_count < 3)
        throw InvalidSpec(fmt::format("bad counts: interior {}, boundary {}",
                                      interior_count, boundary_count));

    SplitMix64 rng(seed);
    for (int round = 0; round < kMaxRejectionRounds; ++round) {
        PlanarBuilder b = build_planar_disk(rng, interior_count, boundary_count);

        // Measure the configuration inside the hyperbolic plane (Klein
        // coordinates scaled into the disk). Interior angle sums around an
        // embedded vertex are exactly 2*pi there; reading the same lengths
        // in a flatter model (euclidean, or hyperbolic after shrinking by
        // half) strictly enlarges every corner, so interior curvature
        // lands strictly negative.
        std::vector<ModelPoint> points;
        points.reserve(b.points.size());
        for (const Vec2& p : b.points)
            points.push_back(to_hyperboloid({p.x * kKleinRadius, p.y * kKleinRadius}));

        double scale = geometry.is_euclidean() ? 1.0 : 0.5;
        std::vector<double> lengths(b.edge_ends.size());
        for (size_t e = 0; e < b.edge_ends.size(); ++e)
            lengths[e] = scale * distance(Geometry::hyperbolic(), points[b.edge_ends[e][0]],
                                          points[b.edge_ends[e][1]]);

        std::map<std::string, std::string> meta{
            {"generator", "random"},
            {"rng", "splitmix64"},
            {"seed", std::to_string(seed)},
            {"interior", std::to_string(interior_count)},
            {"boundary", std::to_string(boundary_count)},
        };
        ConeMesh mesh(geometry, std::move(lengths), b.triangles,
                      static_cast<int>(b.points.size()), std::move(meta));

        if (!mesh.validate().empty()) continue;
        bool margins_ok = true;
        for (VertexId v : mesh.interior_vertices())
            if (mesh.vertex_report(v).total_angle <= kTwoPi + kCurvatureMargin) margins_ok = false;
        if (!margins_ok) continue;
        return mesh;
    }
    throw GenerationFailed(fmt::format(
        "no valid instance for seed {} (interior {}, boundary {}) within {} rounds",
        seed, interior_count, boundary_count, kMaxRejectionRounds));
}

} // namespace coneflat
