#include "coneflat/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "coneflat/errors.hpp"

namespace coneflat {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Slot arithmetic: corner (t, i) sits between outgoing side i
// (v[i] -> v[i+1]) and incoming side (i+2)%3 (v[i+2] -> v[i]).
int out_side(int slot) { return slot; }
int in_side(int slot) { return (slot + 2) % 3; }

} // namespace

const char* violation_name(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::NonPositiveLength: return "NonPositiveLength";
    case ViolationKind::IndexOutOfRange: return "IndexOutOfRange";
    case ViolationKind::EdgeRefCount: return "EdgeRefCount";
    case ViolationKind::EdgeEndpointMismatch: return "EdgeEndpointMismatch";
    case ViolationKind::OrientationMismatch: return "OrientationMismatch";
    case ViolationKind::TriangleInequality: return "TriangleInequality";
    case ViolationKind::PinchedVertex: return "PinchedVertex";
    case ViolationKind::IsolatedVertex: return "IsolatedVertex";
    case ViolationKind::Disconnected: return "Disconnected";
    case ViolationKind::VertexAngleRange: return "VertexAngleRange";
    }
    return "Unknown";
}

ConeMesh::ConeMesh(Geometry geometry, std::vector<double> edge_lengths,
                   std::vector<Triangle> triangles, int vertex_count,
                   std::map<std::string, std::string> metadata)
    : geometry_(geometry), edge_lengths_(std::move(edge_lengths)),
      triangles_(std::move(triangles)), vertex_count_(vertex_count),
      metadata_(std::move(metadata)) {
    build_derived();
}

void ConeMesh::build_derived() {
    const int nv = vertex_count_;
    const int ne = edge_count();
    const int nt = triangle_count();
    edge_sides_.assign(ne, {});
    corners_at_.assign(nv, {});
    stars_.assign(nv, {});
    vertex_on_boundary_.assign(nv, false);
    auto flag = [&](ViolationKind kind, std::vector<int> ids, double slack, std::string msg) {
        structural_violations_.push_back({kind, std::move(ids), slack, std::move(msg)});
    };

    std::vector<bool> usable(nt, true);
    for (int t = 0; t < nt; ++t) {
        const Triangle& tri = triangles_[t];
        for (int i = 0; i < 3; ++i) {
            if (tri.v[i] < 0 || tri.v[i] >= nv) {
                flag(ViolationKind::IndexOutOfRange, {t, tri.v[i]}, 0,
                     fmt::format("triangle {} references vertex {} (have {})", t, tri.v[i], nv));
                usable[t] = false;
            }
            if (tri.e[i] < 0 || tri.e[i] >= ne) {
                flag(ViolationKind::IndexOutOfRange, {t, tri.e[i]}, 0,
                     fmt::format("triangle {} references edge {} (have {})", t, tri.e[i], ne));
                usable[t] = false;
            }
        }
    }
    for (int t = 0; t < nt; ++t) {
        if (!usable[t]) continue;
        const Triangle& tri = triangles_[t];
        for (int i = 0; i < 3; ++i) {
            edge_sides_[tri.e[i]].push_back({t, i});
            corners_at_[tri.v[i]].push_back({t, i});
        }
    }

    bool incidence_ok = true;
    for (int e = 0; e < ne; ++e) {
        size_t refs = edge_sides_[e].size();
        if (refs != 1 && refs != 2) {
            flag(ViolationKind::EdgeRefCount, {e}, 0,
                 fmt::format("edge {} referenced by {} triangle sides", e, refs));
            incidence_ok = false;
        } else if (refs == 2) {
            auto [t1, i1] = edge_sides_[e][0];
            auto [t2, i2] = edge_sides_[e][1];
            VertexId a1 = triangles_[t1].v[i1], b1 = triangles_[t1].v[(i1 + 1) % 3];
            VertexId a2 = triangles_[t2].v[i2], b2 = triangles_[t2].v[(i2 + 1) % 3];
            if (std::minmax(a1, b1) != std::minmax(a2, b2)) {
                flag(ViolationKind::EdgeEndpointMismatch, {e, t1, t2}, 0,
                     fmt::format("edge {} joins ({},{}) in triangle {} but ({},{}) in triangle {}",
                                 e, a1, b1, t1, a2, b2, t2));
                incidence_ok = false;
            } else if (!(a1 == b2 && b1 == a2)) {
                flag(ViolationKind::OrientationMismatch, {e, t1, t2}, 0,
                     fmt::format("edge {} traversed in the same direction by triangles {} and {}",
                                 e, t1, t2));
                incidence_ok = false;
            }
        }
    }

    for (int v = 0; v < nv; ++v) {
        if (corners_at_[v].empty()) {
            flag(ViolationKind::IsolatedVertex, {v}, 0,
                 fmt::format("vertex {} is not referenced by any triangle", v));
            continue;
        }
        for (const Corner& c : corners_at_[v]) {
            const Triangle& tri = triangles_[c.tri];
            if (edge_sides_[tri.e[out_side(c.slot)]].size() == 1 ||
                edge_sides_[tri.e[in_side(c.slot)]].size() == 1)
                vertex_on_boundary_[v] = true;
        }
    }
    if (!incidence_ok) return; // fan walking needs 1-or-2-sided edges

    // Order each vertex star by walking corner-to-corner across shared
    // edges. Counterclockwise moves across the incoming side.
    auto across = [&](int t, int side_slot) -> Corner {
        EdgeId e = triangles_[t].e[side_slot];
        const auto& sides = edge_sides_[e];
        if (sides.size() != 2) return {-1, 0};
        const Corner& s0 = sides[0];
        return (s0.tri == t && s0.slot == side_slot) ? sides[1] : sides[0];
    };
    auto next_ccw = [&](Corner c, VertexId v) -> Corner {
        Corner s = across(c.tri, in_side(c.slot));
        if (s.tri < 0) return s;
        if (triangles_[s.tri].v[s.slot] != v) return {-2, 0};
        return s;
    };
    auto prev_cw = [&](Corner c, VertexId v) -> Corner {
        Corner s = across(c.tri, out_side(c.slot));
        if (s.tri < 0) return s;
        Corner out{s.tri, (s.slot + 1) % 3};
        if (triangles_[out.tri].v[out.slot] != v) return {-2, 0};
        return out;
    };

    for (int v = 0; v < nv; ++v) {
        const auto& corners = corners_at_[v];
        if (corners.empty()) continue;
        const size_t n = corners.size();

        Corner start = corners[0];
        bool broken = false;
        for (size_t step = 0; step < n; ++step) {
            Corner prev = prev_cw(start, v);
            if (prev.tri == -1) break; // boundary reached; start is the fan head
            if (prev.tri == -2) { broken = true; break; }
            if (prev.tri == corners[0].tri && prev.slot == corners[0].slot) {
                start = corners[0]; // closed orbit: interior vertex
                break;
            }
            start = prev;
        }
        if (broken) {
            flag(ViolationKind::PinchedVertex, {v}, 0,
                 fmt::format("corner fan around vertex {} is inconsistent", v));
            continue;
        }

        std::vector<Corner> fan;
        Corner c = start;
        for (size_t step = 0; step < n; ++step) {
            fan.push_back(c);
            Corner nxt = next_ccw(c, v);
            if (nxt.tri == -1) break; // boundary: open fan complete
            if (nxt.tri == -2) { broken = true; break; }
            if (nxt.tri == start.tri && nxt.slot == start.slot) break; // closed
            c = nxt;
        }
        if (broken || fan.size() != n) {
            flag(ViolationKind::PinchedVertex, {v}, 0,
                 fmt::format("star of vertex {} splits into multiple fans ({} of {} corners)",
                             v, fan.size(), n));
            continue;
        }
        stars_[v] = std::move(fan);
    }

    // Connectivity over triangles through shared edges.
    if (nt > 0) {
        std::vector<bool> seen(nt, false);
        std::vector<int> queue;
        int t0 = 0;
        while (t0 < nt && !usable[t0]) ++t0;
        if (t0 < nt) {
            seen[t0] = true;
            queue.push_back(t0);
            while (!queue.empty()) {
                int t = queue.back();
                queue.pop_back();
                for (int i = 0; i < 3; ++i) {
                    Corner s = across(t, i);
                    if (s.tri >= 0 && !seen[s.tri]) {
                        seen[s.tri] = true;
                        queue.push_back(s.tri);
                    }
                }
            }
            std::vector<int> unreached;
            for (int t = 0; t < nt; ++t)
                if (usable[t] && !seen[t]) unreached.push_back(t);
            if (!unreached.empty())
                flag(ViolationKind::Disconnected, unreached, 0,
                     fmt::format("{} triangles unreachable from triangle {}", unreached.size(), t0));
        }
    }
}

TriangleSides ConeMesh::sides_at_corner(TriangleId t, int slot) const {
    const Triangle& tri = triangles_[t];
    return {edge_lengths_[tri.e[(slot + 1) % 3]], edge_lengths_[tri.e[slot]],
            edge_lengths_[tri.e[(slot + 2) % 3]]};
}

double ConeMesh::corner_angle(TriangleId t, int slot) const {
    return angle_opposite(geometry_, sides_at_corner(t, slot));
}

bool ConeMesh::is_boundary_vertex(VertexId v) const {
    if (v < 0 || v >= vertex_count_) throw UnknownVertex(fmt::format("vertex {} out of range", v));
    return vertex_on_boundary_[v];
}

const std::vector<Corner>& ConeMesh::star(VertexId v) const {
    if (v < 0 || v >= vertex_count_) throw UnknownVertex(fmt::format("vertex {} out of range", v));
    return stars_[v];
}

int ConeMesh::star_degree(VertexId v) const {
    if (v < 0 || v >= vertex_count_) throw UnknownVertex(fmt::format("vertex {} out of range", v));
    return static_cast<int>(corners_at_[v].size());
}

VertexReport ConeMesh::vertex_report(VertexId v) const {
    if (v < 0 || v >= vertex_count_) throw UnknownVertex(fmt::format("vertex {} out of range", v));
    double total = 0;
    for (const Corner& c : corners_at_[v]) total += corner_angle(c.tri, c.slot);
    VertexReport report;
    report.vertex = v;
    report.kind = vertex_on_boundary_[v] ? VertexKind::Boundary : VertexKind::Interior;
    report.total_angle = total;
    report.curvature = (report.kind == VertexKind::Interior) ? kTwoPi - total : M_PI - total;
    return report;
}

double ConeMesh::total_area() const {
    double area = 0;
    for (int t = 0; t < triangle_count(); ++t) {
        const Triangle& tri = triangles_[t];
        area += triangle_area(geometry_, {edge_lengths_[tri.e[0]], edge_lengths_[tri.e[1]],
                                          edge_lengths_[tri.e[2]]});
    }
    return area;
}

double ConeMesh::perimeter() const {
    double length = 0;
    for (int e = 0; e < edge_count(); ++e)
        if (edge_sides_[e].size() == 1) length += edge_lengths_[e];
    return length;
}

std::vector<Violation> ConeMesh::validate() const {
    std::vector<Violation> out = structural_violations_;

    std::vector<bool> edge_ok(edge_count(), true);
    for (int e = 0; e < edge_count(); ++e) {
        double len = edge_lengths_[e];
        if (!(len > 0) || !std::isfinite(len)) {
            out.push_back({ViolationKind::NonPositiveLength, {e}, len,
                           fmt::format("edge {} has length {}", e, len)});
            edge_ok[e] = false;
        }
    }

    std::vector<bool> tri_ok(triangle_count(), true);
    for (int t = 0; t < triangle_count(); ++t) {
        const Triangle& tri = triangles_[t];
        bool lengths_ok = true;
        for (int i = 0; i < 3; ++i)
            if (tri.e[i] < 0 || tri.e[i] >= edge_count() || !edge_ok[tri.e[i]]) lengths_ok = false;
        if (!lengths_ok) {
            tri_ok[t] = false;
            continue;
        }
        TriangleSides s{edge_lengths_[tri.e[0]], edge_lengths_[tri.e[1]], edge_lengths_[tri.e[2]]};
        if (!sides_valid(s)) {
            double hi = std::max({s.a, s.b, s.c});
            double margin = (s.a + s.b + s.c - hi) * (1.0 - kTriangleSlack) - hi;
            out.push_back({ViolationKind::TriangleInequality, {t}, margin,
                           fmt::format("triangle {} with sides ({}, {}, {})", t, s.a, s.b, s.c)});
            tri_ok[t] = false;
        }
    }

    for (int v = 0; v < vertex_count_; ++v) {
        if (corners_at_[v].empty()) continue;
        bool computable = true;
        for (const Corner& c : corners_at_[v])
            if (!tri_ok[c.tri]) computable = false;
        if (!computable) continue;
        double total = 0;
        for (const Corner& c : corners_at_[v]) total += corner_angle(c.tri, c.slot);
        if (total < 1e-12 || total > 1e6)
            out.push_back({ViolationKind::VertexAngleRange, {v}, total,
                           fmt::format("vertex {} has total angle {}", v, total)});
    }
    return out;
}

ConeMesh::CurvatureCheck ConeMesh::check_negative_curvature(double flat_tol) const {
    CurvatureCheck check;
    for (int v = 0; v < vertex_count_; ++v) {
        if (corners_at_[v].empty() || vertex_on_boundary_[v]) continue;
        double omega = vertex_report(v).total_angle;
        if (std::abs(omega - kTwoPi) <= flat_tol)
            check.flat.push_back(v);
        else if (omega < kTwoPi)
            check.positive.push_back(v);
    }
    return check;
}

int ConeMesh::euler_characteristic() const {
    return vertex_count_ - edge_count() + triangle_count();
}

int ConeMesh::boundary_cycle_count() const {
    // Union-find over boundary edge endpoints; on a valid manifold mesh
    // each component is a simple cycle.
    std::vector<int> parent(vertex_count_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    bool any = false;
    std::vector<bool> touched(vertex_count_, false);
    for (int e = 0; e < edge_count(); ++e) {
        if (edge_sides_[e].size() != 1) continue;
        any = true;
        auto [t, i] = edge_sides_[e][0];
        VertexId a = triangles_[t].v[i], b = triangles_[t].v[(i + 1) % 3];
        touched[a] = touched[b] = true;
        parent[find(a)] = find(b);
    }
    if (!any) return 0;
    std::vector<int> roots;
    for (int v = 0; v < vertex_count_; ++v)
        if (touched[v]) roots.push_back(find(v));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return static_cast<int>(roots.size());
}

std::vector<VertexId> ConeMesh::interior_vertices() const {
    std::vector<VertexId> out;
    for (int v = 0; v < vertex_count_; ++v)
        if (!corners_at_[v].empty() && !vertex_on_boundary_[v]) out.push_back(v);
    return out;
}

} // namespace coneflat
