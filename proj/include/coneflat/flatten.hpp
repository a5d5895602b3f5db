#pragma once

#include <functional>
#include <vector>

#include "coneflat/mesh.hpp"
#include "coneflat/model.hpp"

namespace coneflat {

// Interior vertices with |omega - 2*pi| below this are flat and removable;
// above it they are singular. Two orders of margin over the first-event
// angle tolerance 1e-10.
inline constexpr double kFlatTol = 1e-8;

// One elimination step: deform the star of chosen_vertex by t0 until the
// angle at flattened_vertex (chosen_vertex or an interior neighbor) reaches
// 2*pi, exactly the first such event.
struct DeformationStep {
    VertexId chosen_vertex = -1;
    double t0 = 0;
    VertexId flattened_vertex = -1;
    double area_before = 0;
    double area_after = 0;
    double perimeter = 0;
    int interior_singular_count_after = 0;
};

// Picks the next vertex to deform from the non-empty singular list.
using SelectionPolicy =
    std::function<VertexId(const ConeMesh&, const std::vector<VertexId>&)>;

SelectionPolicy min_degree_policy();   // smallest star degree, lowest id ties (default)
SelectionPolicy lowest_id_policy();
SelectionPolicy max_excess_policy();   // largest omega - 2*pi, lowest id ties

struct FirstEvent {
    double t0 = 0;
    VertexId flattened = -1;
};

// Smallest t > 0 at which the cone angle at p or at one of its interior
// neighbors reaches 2*pi under the star deformation at p. Found by
// geometric bracketing plus bisection, then verified on 64 intermediate
// samples; re-bracketed if an earlier dip is detected.
FirstEvent find_t0(const ConeMesh& mesh, VertexId p);

// New mesh with every edge incident to p deformed by t; everything else,
// including all boundary lengths, is copied bit for bit.
ConeMesh apply_star_deformation(const ConeMesh& mesh, VertexId p, double t);

struct StarDevelopment {
    ModelPoint center;
    std::vector<ModelPoint> link_points;   // counterclockwise simple polygon
    std::vector<VertexId> link_vertices;   // mesh vertex of each polygon corner
    std::vector<EdgeId> link_edges;        // link_edges[i] joins corner i to i+1
    std::vector<EdgeId> spoke_edges;       // spoke_edges[i] joins v to corner i
    std::vector<TriangleId> star_triangles;
    double total_angle = 0;
};

// Lays the star of a flat vertex isometrically into the model plane around
// the origin. The sub-1e-7 closure defect (the angle sum is 2*pi only up
// to flat_tol) is redistributed proportionally over the corner angles so
// the seam closes exactly.
StarDevelopment develop_star(const ConeMesh& mesh, VertexId v, double flat_tol = kFlatTol);

struct PolygonTriangulation {
    std::vector<std::array<int, 2>> diagonals; // n-3 interior diagonals
    std::vector<std::array<int, 3>> triangles; // n-2 triangles, counterclockwise
};

// Ear clipping on plane coordinates (euclidean) or Klein-projected
// coordinates (hyperbolic), where geodesics are straight. Among the valid
// ears each round, the one maximizing the minimum model-geometry angle of
// the clipped triangle is taken.
PolygonTriangulation triangulate_polygon(Geometry geometry,
                                         const std::vector<ModelPoint>& polygon);

// Replaces the star of a flat interior vertex by the ear-clipped
// triangulation of its developed link polygon. Drops one vertex; diagonal
// lengths are measured in the model plane; the boundary is untouched.
ConeMesh remove_flat_vertex(const ConeMesh& mesh, VertexId v, double flat_tol = kFlatTol);

struct FlattenEvent {
    enum class Kind { Deformed, Removed } kind;
    const ConeMesh& before;
    const ConeMesh& after;
    VertexId vertex; // deformed p, or removed flat vertex
    double t0;       // Deformed events only
};

struct FlattenOptions {
    double flat_tol = kFlatTol;
    SelectionPolicy policy;                          // default: min_degree_policy()
    std::function<void(const FlattenEvent&)> observer; // called after every event
};

struct FlattenResult {
    ConeMesh mesh;
    std::vector<DeformationStep> steps;
};

// Repeatedly deform-and-remove until no interior vertex remains. Requires
// a valid disk (chi = 1, one boundary cycle) with no positive interior
// curvature. Perimeter is preserved; area strictly increases per step.
FlattenResult flatten(const ConeMesh& mesh, const FlattenOptions& options = {});

} // namespace coneflat
