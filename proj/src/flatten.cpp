#include "coneflat/flatten.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <optional>

#include "coneflat/errors.hpp"

namespace coneflat {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kEventAngleTol = 1e-10; // |omega - 2*pi| at the event
constexpr double kBisectRelTol = 1e-12;
constexpr double kMaxBracket = 1152921504606846976.0; // 2^60
constexpr double kClosureTol = 1e-7;

// Star of p with everything needed to evaluate monitored cone angles as a
// function of the deformation parameter.
struct StarTriangle {
    double link;      // side opposite p, fixed
    double spoke_out; // p -> v_out, deformed
    double spoke_in;  // v_in -> p, deformed
    VertexId v_out = -1, v_in = -1;
    int mon_out = -1, mon_in = -1; // indices into monitored, -1 if unmonitored
};

struct StarSnapshot {
    Geometry geometry;
    VertexId p = -1;
    std::vector<StarTriangle> tris;
    std::vector<VertexId> monitored;    // p first, then interior neighbors
    std::vector<double> static_angle;   // angle contributed outside the star
    double min_spoke = 0;
};

void require_interior(const ConeMesh& mesh, VertexId v, const char* op) {
    if (v < 0 || v >= mesh.vertex_count())
        throw UnknownVertex(fmt::format("{}: vertex {} out of range", op, v));
    if (mesh.star_degree(v) == 0)
        throw Error(fmt::format("{}: vertex {} is isolated", op, v));
    if (mesh.is_boundary_vertex(v))
        throw Error(fmt::format("{}: vertex {} is on the boundary", op, v));
    if (mesh.star(v).empty())
        throw Error(fmt::format("{}: star of vertex {} is not a single fan", op, v));
}

StarSnapshot snapshot_star(const ConeMesh& mesh, VertexId p) {
    StarSnapshot snap;
    snap.geometry = mesh.geometry();
    snap.p = p;
    snap.min_spoke = std::numeric_limits<double>::infinity();

    for (const Corner& c : mesh.star(p)) {
        const Triangle& tri = mesh.triangle(c.tri);
        if (std::count(tri.v.begin(), tri.v.end(), p) != 1)
            throw Error(fmt::format(
                "star deformation at {} unsupported: triangle {} meets it more than once",
                p, c.tri));
        StarTriangle st;
        st.link = mesh.edge_length(tri.e[(c.slot + 1) % 3]);
        st.spoke_out = mesh.edge_length(tri.e[c.slot]);
        st.spoke_in = mesh.edge_length(tri.e[(c.slot + 2) % 3]);
        st.v_out = tri.v[(c.slot + 1) % 3];
        st.v_in = tri.v[(c.slot + 2) % 3];
        snap.min_spoke = std::min({snap.min_spoke, st.spoke_out, st.spoke_in});
        snap.tris.push_back(st);
    }

    snap.monitored.push_back(p);
    for (const StarTriangle& st : snap.tris)
        if (!mesh.is_boundary_vertex(st.v_out) &&
            std::find(snap.monitored.begin(), snap.monitored.end(), st.v_out) ==
                snap.monitored.end())
            snap.monitored.push_back(st.v_out);

    auto monitored_index = [&](VertexId v) -> int {
        auto it = std::find(snap.monitored.begin(), snap.monitored.end(), v);
        return it == snap.monitored.end() ? -1
                                          : static_cast<int>(it - snap.monitored.begin());
    };
    for (StarTriangle& st : snap.tris) {
        st.mon_out = monitored_index(st.v_out);
        st.mon_in = monitored_index(st.v_in);
    }

    // Everything outside the star is constant in t; subtract the t = 0 star
    // corners from the full reports once.
    snap.static_angle.assign(snap.monitored.size(), 0.0);
    for (size_t m = 0; m < snap.monitored.size(); ++m)
        snap.static_angle[m] = mesh.vertex_report(snap.monitored[m]).total_angle;
    for (const StarTriangle& st : snap.tris) {
        snap.static_angle[0] -=
            angle_opposite(snap.geometry, {st.link, st.spoke_out, st.spoke_in});
        if (st.mon_out > 0)
            snap.static_angle[st.mon_out] -=
                angle_opposite(snap.geometry, {st.spoke_in, st.link, st.spoke_out});
        if (st.mon_in > 0)
            snap.static_angle[st.mon_in] -=
                angle_opposite(snap.geometry, {st.spoke_out, st.link, st.spoke_in});
    }
    return snap;
}

// min over monitored vertices of omega_v(t) - 2*pi, with the argmin.
std::pair<double, int> min_excess(const StarSnapshot& snap, double t) {
    std::vector<double> totals = snap.static_angle;
    for (const StarTriangle& st : snap.tris) {
        double so = deform_length(snap.geometry, st.spoke_out, t);
        double si = deform_length(snap.geometry, st.spoke_in, t);
        totals[0] += angle_opposite(snap.geometry, {st.link, so, si});
        if (st.mon_out > 0)
            totals[st.mon_out] += angle_opposite(snap.geometry, {si, st.link, so});
        if (st.mon_in > 0)
            totals[st.mon_in] += angle_opposite(snap.geometry, {so, st.link, si});
    }
    int argmin = 0;
    for (size_t m = 1; m < totals.size(); ++m)
        if (totals[m] < totals[argmin]) argmin = static_cast<int>(m);
    return {totals[argmin] - kTwoPi, argmin};
}

std::vector<VertexId> singular_interior(const ConeMesh& mesh, double tol) {
    std::vector<VertexId> out;
    for (VertexId v : mesh.interior_vertices())
        if (mesh.vertex_report(v).total_angle > kTwoPi + tol) out.push_back(v);
    return out;
}

std::optional<VertexId> first_flat_interior(const ConeMesh& mesh, double tol) {
    for (VertexId v : mesh.interior_vertices())
        if (std::abs(mesh.vertex_report(v).total_angle - kTwoPi) <= tol) return v;
    return std::nullopt;
}

} // namespace

SelectionPolicy min_degree_policy() {
    return [](const ConeMesh& mesh, const std::vector<VertexId>& singular) {
        VertexId best = singular.front();
        for (VertexId v : singular)
            if (mesh.star_degree(v) < mesh.star_degree(best)) best = v;
        return best;
    };
}

SelectionPolicy lowest_id_policy() {
    return [](const ConeMesh&, const std::vector<VertexId>& singular) {
        return *std::min_element(singular.begin(), singular.end());
    };
}

SelectionPolicy max_excess_policy() {
    return [](const ConeMesh& mesh, const std::vector<VertexId>& singular) {
        VertexId best = singular.front();
        double best_omega = mesh.vertex_report(best).total_angle;
        for (VertexId v : singular) {
            double omega = mesh.vertex_report(v).total_angle;
            if (omega > best_omega) {
                best = v;
                best_omega = omega;
            }
        }
        return best;
    };
}

FirstEvent find_t0(const ConeMesh& mesh, VertexId p) {
    require_interior(mesh, p, "find_t0");
    double omega_p = mesh.vertex_report(p).total_angle;
    if (omega_p <= kTwoPi + kFlatTol)
        throw NotSingular(fmt::format("vertex {} has cone angle {} <= 2*pi", p, omega_p));

    StarSnapshot snap = snapshot_star(mesh, p);
    if (min_excess(snap, 0.0).first < -kEventAngleTol)
        throw Error(fmt::format(
            "find_t0 at {}: a monitored vertex is already below 2*pi; remove flats first", p));

    double t_unit = snap.geometry.is_euclidean()
                        ? snap.min_spoke * snap.min_spoke * 1e-6
                        : snap.min_spoke * std::tanh(snap.min_spoke) * 1e-6;

    double lo = 0.0, hi = t_unit;
    while (min_excess(snap, hi).first >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > kMaxBracket)
            throw NoBracket(fmt::format(
                "cone angle at {} never reached 2*pi up to t = 2^60; the decay is guaranteed",
                p));
    }

    for (int attempt = 0; attempt < 8; ++attempt) {
        for (int iter = 0; iter < 200 && hi - lo > kBisectRelTol * hi; ++iter) {
            double mid = 0.5 * (lo + hi);
            (min_excess(snap, mid).first < 0.0 ? hi : lo) = mid;
        }
        double t0 = hi;

        // The minimum over several angles need not be monotone; confirm no
        // monitored angle dipped earlier, else hunt down the earlier event.
        bool clean = true;
        for (int s = 1; s <= 64; ++s) {
            double ts = t0 * s / 65.0;
            if (min_excess(snap, ts).first < -kEventAngleTol) {
                lo = t0 * (s - 1) / 65.0;
                hi = ts;
                clean = false;
                break;
            }
        }
        if (!clean) continue;

        auto [excess, argmin] = min_excess(snap, t0);
        if (std::abs(excess) > kEventAngleTol)
            throw InternalError(fmt::format(
                "first event at t0 = {} leaves angle excess {} at vertex {}", t0, excess,
                snap.monitored[argmin]));
        return {t0, snap.monitored[argmin]};
    }
    throw InternalError(fmt::format("first-event verification kept failing at vertex {}", p));
}

ConeMesh apply_star_deformation(const ConeMesh& mesh, VertexId p, double t) {
    require_interior(mesh, p, "apply_star_deformation");
    if (!(t >= 0)) throw Error(fmt::format("apply_star_deformation: negative t {}", t));

    std::vector<bool> incident(mesh.edge_count(), false);
    for (const Corner& c : mesh.star(p)) {
        const Triangle& tri = mesh.triangle(c.tri);
        if (std::count(tri.v.begin(), tri.v.end(), p) != 1)
            throw Error(fmt::format(
                "star deformation at {} unsupported: triangle {} meets it more than once",
                p, c.tri));
        incident[tri.e[c.slot]] = true;
        incident[tri.e[(c.slot + 2) % 3]] = true;
    }

    std::vector<double> lengths = mesh.edge_lengths();
    for (int e = 0; e < mesh.edge_count(); ++e)
        if (incident[e]) lengths[e] = deform_length(mesh.geometry(), lengths[e], t);

    ConeMesh out(mesh.geometry(), std::move(lengths), mesh.triangles(), mesh.vertex_count(),
                 mesh.metadata());
    for (const Corner& c : mesh.star(p)) {
        const Triangle& tri = mesh.triangle(c.tri);
        TriangleSides s{out.edge_length(tri.e[0]), out.edge_length(tri.e[1]),
                        out.edge_length(tri.e[2])};
        if (!sides_valid(s))
            throw InternalError(fmt::format(
                "deformed star triangle {} invalid at t = {}; existence is guaranteed",
                c.tri, t));
    }
    return out;
}

StarDevelopment develop_star(const ConeMesh& mesh, VertexId v, double flat_tol) {
    require_interior(mesh, v, "develop_star");
    double omega = mesh.vertex_report(v).total_angle;
    if (std::abs(omega - kTwoPi) > flat_tol)
        throw NotFlat(fmt::format("vertex {} has cone angle {}, not 2*pi within {}", v,
                                  omega, flat_tol));
    const auto& fan = mesh.star(v);
    if (fan.size() < 3)
        throw Error(fmt::format("develop_star: vertex {} has star degree {}", v, fan.size()));

    Geometry geometry = mesh.geometry();
    StarDevelopment dev;
    dev.center = model_origin(geometry);
    dev.total_angle = omega;

    double first_spoke = mesh.edge_length(mesh.triangle(fan[0].tri).e[fan[0].slot]);
    double gap = distance(geometry, polar_point(geometry, first_spoke, 0.0),
                          polar_point(geometry, first_spoke, omega));
    if (gap > kClosureTol)
        throw ClosureFailure(fmt::format(
            "development around {} misses closure by {} (angle defect {})", v, gap,
            omega - kTwoPi));

    // Redistribute the closure defect proportionally over the corners so
    // the seam spoke lands exactly on the first one.
    double scale = kTwoPi / omega;
    double phi = 0.0;
    for (const Corner& c : fan) {
        const Triangle& tri = mesh.triangle(c.tri);
        VertexId w = tri.v[(c.slot + 1) % 3];
        if (w == v)
            throw Error(fmt::format("develop_star: loop edge at vertex {} unsupported", v));
        double spoke = mesh.edge_length(tri.e[c.slot]);
        dev.link_points.push_back(polar_point(geometry, spoke, phi));
        dev.link_vertices.push_back(w);
        dev.link_edges.push_back(tri.e[(c.slot + 1) % 3]);
        dev.spoke_edges.push_back(tri.e[c.slot]);
        dev.star_triangles.push_back(c.tri);
        phi += mesh.corner_angle(c.tri, c.slot) * scale;
    }
    return dev;
}

namespace {

double orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Vec2& a1, const Vec2& b1, const Vec2& a2, const Vec2& b2) {
    double d1 = orient2d(a1, b1, a2);
    double d2 = orient2d(a1, b1, b2);
    double d3 = orient2d(a2, b2, a1);
    double d4 = orient2d(a2, b2, b1);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && on_segment(a1, b1, a2)) return true;
    if (d2 == 0 && on_segment(a1, b1, b2)) return true;
    if (d3 == 0 && on_segment(a2, b2, a1)) return true;
    if (d4 == 0 && on_segment(a2, b2, b1)) return true;
    return false;
}

} // namespace

PolygonTriangulation triangulate_polygon(Geometry geometry,
                                         const std::vector<ModelPoint>& polygon) {
    const int n = static_cast<int>(polygon.size());
    if (n < 3) throw NotSimple(fmt::format("polygon with {} vertices", n));

    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = klein(geometry, polygon[i]);

    double doubled_area = 0;
    for (int i = 0; i < n; ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % n];
        doubled_area += a.x * b.y - a.y * b.x;
    }
    if (doubled_area <= 0) throw NotSimple("polygon is not positively oriented");

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]))
                throw NotSimple(fmt::format("sides {} and {} intersect", i, j));
        }

    std::vector<int> prev(n), next(n);
    for (int i = 0; i < n; ++i) {
        prev[i] = (i + n - 1) % n;
        next[i] = (i + 1) % n;
    }

    // True min angle of the candidate triangle, measured in the model
    // geometry rather than in the projected coordinates.
    auto ear_quality = [&](int a, int b, int c) -> double {
        TriangleSides s{distance(geometry, polygon[b], polygon[c]),
                        distance(geometry, polygon[c], polygon[a]),
                        distance(geometry, polygon[a], polygon[b])};
        if (!sides_valid(s)) return -1.0;
        auto ang = corner_angles(geometry, s);
        return std::min({ang[0], ang[1], ang[2]});
    };

    PolygonTriangulation out;
    int remaining = n;
    int head = 0;
    while (remaining > 3) {
        int best = -1;
        double best_score = -1.0;
        int i = head;
        for (int steps = 0; steps < remaining; ++steps, i = next[i]) {
            int a = prev[i], c = next[i];
            if (orient2d(pts[a], pts[i], pts[c]) <= 0) continue; // reflex or flat corner
            bool blocked = false;
            for (int x = next[c]; x != a; x = next[x]) {
                if (orient2d(pts[a], pts[i], pts[x]) >= 0 &&
                    orient2d(pts[i], pts[c], pts[x]) >= 0 &&
                    orient2d(pts[c], pts[a], pts[x]) >= 0) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
            double score = ear_quality(a, i, c);
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        if (best < 0) throw EarSearchFailed("no clippable ear; polygon not simple?");

        int a = prev[best], c = next[best];
        out.triangles.push_back({a, best, c});
        out.diagonals.push_back({a, c});
        next[a] = c;
        prev[c] = a;
        head = a;
        --remaining;
    }
    out.triangles.push_back({head, next[head], next[next[head]]});
    return out;
}

ConeMesh remove_flat_vertex(const ConeMesh& mesh, VertexId v, double flat_tol) {
    StarDevelopment dev = develop_star(mesh, v, flat_tol);
    PolygonTriangulation cut = triangulate_polygon(mesh.geometry(), dev.link_points);
    const int n = static_cast<int>(dev.link_points.size());

    std::vector<bool> edge_removed(mesh.edge_count(), false);
    for (EdgeId e : dev.spoke_edges) edge_removed[e] = true;
    std::vector<int> edge_map(mesh.edge_count(), -1);
    std::vector<double> lengths;
    lengths.reserve(mesh.edge_count() - n + cut.diagonals.size());
    for (int e = 0; e < mesh.edge_count(); ++e) {
        if (edge_removed[e]) continue;
        edge_map[e] = static_cast<int>(lengths.size());
        lengths.push_back(mesh.edge_length(e));
    }
    std::map<std::pair<int, int>, int> diagonal_edge;
    for (const auto& d : cut.diagonals) {
        diagonal_edge[std::minmax(d[0], d[1])] = static_cast<int>(lengths.size());
        lengths.push_back(
            distance(mesh.geometry(), dev.link_points[d[0]], dev.link_points[d[1]]));
    }

    auto vmap = [&](VertexId w) { return w > v ? w - 1 : w; };
    auto edge_between = [&](int a, int b) -> int {
        if ((a + 1) % n == b) return edge_map[dev.link_edges[a]];
        if ((b + 1) % n == a) return edge_map[dev.link_edges[b]];
        return diagonal_edge.at(std::minmax(a, b));
    };

    std::vector<bool> tri_removed(mesh.triangle_count(), false);
    for (TriangleId t : dev.star_triangles) tri_removed[t] = true;
    std::vector<Triangle> triangles;
    triangles.reserve(mesh.triangle_count() - dev.star_triangles.size() + cut.triangles.size());
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        if (tri_removed[t]) continue;
        const Triangle& tri = mesh.triangle(t);
        triangles.push_back({{vmap(tri.v[0]), vmap(tri.v[1]), vmap(tri.v[2])},
                             {edge_map[tri.e[0]], edge_map[tri.e[1]], edge_map[tri.e[2]]}});
    }
    for (const auto& ear : cut.triangles)
        triangles.push_back({{vmap(dev.link_vertices[ear[0]]), vmap(dev.link_vertices[ear[1]]),
                              vmap(dev.link_vertices[ear[2]])},
                             {edge_between(ear[0], ear[1]), edge_between(ear[1], ear[2]),
                              edge_between(ear[2], ear[0])}});

    return ConeMesh(mesh.geometry(), std::move(lengths), std::move(triangles),
                    mesh.vertex_count() - 1, mesh.metadata());
}

FlattenResult flatten(const ConeMesh& mesh, const FlattenOptions& options) {
    auto violations = mesh.validate();
    if (!violations.empty())
        throw Error(fmt::format("flatten: mesh invalid ({}: {})",
                                violation_name(violations.front().kind),
                                violations.front().message));
    if (mesh.euler_characteristic() != 1 || mesh.boundary_cycle_count() != 1)
        throw NonDisk(fmt::format(
            "flatten needs a disk: Euler characteristic {} with {} boundary cycles",
            mesh.euler_characteristic(), mesh.boundary_cycle_count()));
    auto curvature = mesh.check_negative_curvature(options.flat_tol);
    if (!curvature.positive.empty())
        throw Error(fmt::format("flatten: interior vertex {} has positive curvature",
                                curvature.positive.front()));

    SelectionPolicy policy = options.policy ? options.policy : min_degree_policy();
    auto notify = [&](FlattenEvent::Kind kind, const ConeMesh& before, const ConeMesh& after,
                      VertexId vertex, double t0) {
        if (options.observer) options.observer({kind, before, after, vertex, t0});
    };

    FlattenResult result{mesh, {}};
    const int max_rounds = 2 * static_cast<int>(mesh.interior_vertices().size()) + 2;
    for (int round = 0; round < max_rounds; ++round) {
        while (auto flat = first_flat_interior(result.mesh, options.flat_tol)) {
            ConeMesh next = remove_flat_vertex(result.mesh, *flat, options.flat_tol);
            notify(FlattenEvent::Kind::Removed, result.mesh, next, *flat, 0.0);
            result.mesh = std::move(next);
        }

        std::vector<VertexId> singular = singular_interior(result.mesh, options.flat_tol);
        if (singular.empty()) return result;

        VertexId p = policy(result.mesh, singular);
        FirstEvent event = find_t0(result.mesh, p);
        double area_before = result.mesh.total_area();
        ConeMesh next = apply_star_deformation(result.mesh, p, event.t0);
        notify(FlattenEvent::Kind::Deformed, result.mesh, next, p, event.t0);

        DeformationStep step;
        step.chosen_vertex = p;
        step.t0 = event.t0;
        step.flattened_vertex = event.flattened;
        step.area_before = area_before;
        step.area_after = next.total_area();
        step.perimeter = next.perimeter();
        step.interior_singular_count_after =
            static_cast<int>(singular_interior(next, options.flat_tol).size());
        if (!(step.area_after > step.area_before))
            throw InternalError(fmt::format(
                "area did not increase at vertex {} (t0 = {}): {} -> {}", p, event.t0,
                step.area_before, step.area_after));
        result.steps.push_back(step);
        result.mesh = std::move(next);
    }
    throw InternalError("flatten failed to terminate within the guaranteed step budget");
}

} // namespace coneflat
