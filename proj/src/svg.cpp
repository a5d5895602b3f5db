#include "coneflat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include "coneflat/errors.hpp"
#include "coneflat/model.hpp"

namespace coneflat {

namespace {

// Per-triangle corner positions: developments around cone points are
// multivalued per vertex, so positions are never shared across triangles.
struct Layout {
    std::vector<std::array<ModelPoint, 3>> corner;
    std::vector<bool> placed;
};

void place_seed(const ConeMesh& mesh, Layout& layout, TriangleId t, int slot) {
    const Triangle& tri = mesh.triangle(t);
    Geometry g = mesh.geometry();
    double base = mesh.edge_length(tri.e[slot]);
    ModelPoint p = model_origin(g);
    ModelPoint q = polar_point(g, base, 0.0);
    TriangleSides sides{mesh.edge_length(tri.e[(slot + 1) % 3]),
                        mesh.edge_length(tri.e[(slot + 2) % 3]), base};
    ModelPoint r = place_triangle(g, sides, p, q, Side::Left);
    layout.corner[t][slot] = p;
    layout.corner[t][(slot + 1) % 3] = q;
    layout.corner[t][(slot + 2) % 3] = r;
    layout.placed[t] = true;
}

void develop(const ConeMesh& mesh, Layout& layout) {
    layout.corner.assign(mesh.triangle_count(), {});
    layout.placed.assign(mesh.triangle_count(), false);

    for (int seed = 0; seed < mesh.triangle_count(); ++seed) {
        if (layout.placed[seed]) continue;
        // Prefer a boundary side of the component as the seed base.
        int seed_slot = 0;
        for (int i = 0; i < 3; ++i)
            if (mesh.is_boundary_edge(mesh.triangle(seed).e[i])) seed_slot = i;
        place_seed(mesh, layout, seed, seed_slot);

        std::deque<TriangleId> queue{seed};
        while (!queue.empty()) {
            TriangleId t = queue.front();
            queue.pop_front();
            const Triangle& tri = mesh.triangle(t);
            for (int i = 0; i < 3; ++i) {
                const auto& sides = mesh.edge_sides(tri.e[i]);
                if (sides.size() != 2) continue;
                Corner other = (sides[0].tri == t && sides[0].slot == i) ? sides[1] : sides[0];
                if (layout.placed[other.tri]) continue;
                // The neighbor traverses the shared edge in reverse.
                const Triangle& nxt = mesh.triangle(other.tri);
                int j = other.slot;
                ModelPoint bp = layout.corner[t][(i + 1) % 3];
                ModelPoint bq = layout.corner[t][i];
                TriangleSides s{mesh.edge_length(nxt.e[(j + 1) % 3]),
                                mesh.edge_length(nxt.e[(j + 2) % 3]),
                                mesh.edge_length(nxt.e[j])};
                ModelPoint third = place_triangle(mesh.geometry(), s, bp, bq, Side::Left);
                layout.corner[other.tri][j] = bp;
                layout.corner[other.tri][(j + 1) % 3] = bq;
                layout.corner[other.tri][(j + 2) % 3] = third;
                layout.placed[other.tri] = true;
                queue.push_back(other.tri);
            }
        }
    }
}

} // namespace

std::string svg_from_mesh(const ConeMesh& mesh) {
    if (mesh.triangle_count() == 0) throw Error("svg export: empty mesh");
    auto violations = mesh.validate();
    if (!violations.empty())
        throw Error(fmt::format("svg export: mesh invalid ({})", violations.front().message));

    Layout layout;
    develop(mesh, layout);

    std::vector<std::array<Vec2, 3>> flat(mesh.triangle_count());
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (int t = 0; t < mesh.triangle_count(); ++t)
        for (int i = 0; i < 3; ++i) {
            Vec2 v = klein(mesh.geometry(), layout.corner[t][i]);
            flat[t][i] = v;
            min_x = std::min(min_x, v.x);
            max_x = std::max(max_x, v.x);
            min_y = std::min(min_y, v.y);
            max_y = std::max(max_y, v.y);
        }

    double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
    double scale = 720.0 / span;
    double pad = 20.0;
    auto sx = [&](double x) { return pad + (x - min_x) * scale; };
    auto sy = [&](double y) { return pad + (max_y - y) * scale; }; // flip y for screen space

    std::ostringstream out;
    double width = pad * 2 + (max_x - min_x) * scale;
    double height = pad * 2 + (max_y - min_y) * scale;
    out << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
        "viewBox=\"0 0 {:.0f} {:.0f}\">\n",
        width, height, width, height);
    out << "<!-- development of a cone-metric; overlapping triangles are drawn as-is -->\n";
    if (mesh.geometry().is_hyperbolic())
        out << "<!-- hyperbolic mesh shown in the Klein projection: geodesics are straight -->\n";

    for (int t = 0; t < mesh.triangle_count(); ++t)
        out << fmt::format(
            "<polygon points=\"{:.3f},{:.3f} {:.3f},{:.3f} {:.3f},{:.3f}\" "
            "fill=\"#4a90d9\" fill-opacity=\"0.15\" stroke=\"#555\" stroke-width=\"1\"/>\n",
            sx(flat[t][0].x), sy(flat[t][0].y), sx(flat[t][1].x), sy(flat[t][1].y),
            sx(flat[t][2].x), sy(flat[t][2].y));

    for (int e = 0; e < mesh.edge_count(); ++e) {
        if (!mesh.is_boundary_edge(e)) continue;
        Corner side = mesh.edge_sides(e)[0];
        const Vec2& a = flat[side.tri][side.slot];
        const Vec2& b = flat[side.tri][(side.slot + 1) % 3];
        out << fmt::format(
            "<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" "
            "stroke=\"#c0392b\" stroke-width=\"2.5\"/>\n",
            sx(a.x), sy(a.y), sx(b.x), sy(b.y));
    }
    out << "</svg>\n";
    return out.str();
}

void export_svg(const ConeMesh& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write {}", path));
    out << svg_from_mesh(mesh);
}

} // namespace coneflat
