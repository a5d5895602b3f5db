#pragma once

#include <map>
#include <string>
#include <vector>

#include "coneflat/geometry.hpp"
#include "coneflat/trig.hpp"

namespace coneflat {

using VertexId = int;
using EdgeId = int;
using TriangleId = int;

// Corners are counterclockwise; e[i] joins v[i] and v[(i+1) % 3]. Two
// triangles glued along an edge traverse it in opposite directions.
struct Triangle {
    std::array<VertexId, 3> v;
    std::array<EdgeId, 3> e;
};

enum class ViolationKind {
    NonPositiveLength,
    IndexOutOfRange,
    EdgeRefCount,
    EdgeEndpointMismatch,
    OrientationMismatch,
    TriangleInequality,
    PinchedVertex,
    IsolatedVertex,
    Disconnected,
    VertexAngleRange,
};

const char* violation_name(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::vector<int> ids; // offending edge/triangle/vertex ids
    double slack = 0;     // signed margin where meaningful
    std::string message;
};

enum class VertexKind { Interior, Boundary };

struct VertexReport {
    VertexId vertex = -1;
    VertexKind kind = VertexKind::Interior;
    double total_angle = 0; // omega (interior) or theta (boundary)
    double curvature = 0;   // 2*pi - omega, or pi - theta
};

// Corner `slot` of triangle `tri`, sitting at vertex tri.v[slot].
struct Corner {
    TriangleId tri = -1;
    int slot = 0;
};

// An intrinsic cone-surface: combinatorics plus edge lengths, no vertex
// coordinates. Immutable after construction; all queries are read-only and
// derived incidence is built once up front.
class ConeMesh {
public:
    ConeMesh(Geometry geometry, std::vector<double> edge_lengths,
             std::vector<Triangle> triangles, int vertex_count,
             std::map<std::string, std::string> metadata = {});

    Geometry geometry() const { return geometry_; }
    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edge_lengths_.size()); }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }
    double edge_length(EdgeId e) const { return edge_lengths_[e]; }
    const std::vector<double>& edge_lengths() const { return edge_lengths_; }
    const Triangle& triangle(TriangleId t) const { return triangles_[t]; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const std::map<std::string, std::string>& metadata() const { return metadata_; }

    // Side lengths of triangle t such that .a is opposite corner `slot`.
    TriangleSides sides_at_corner(TriangleId t, int slot) const;
    double corner_angle(TriangleId t, int slot) const;

    bool is_boundary_edge(EdgeId e) const { return edge_sides_[e].size() == 1; }
    bool is_boundary_vertex(VertexId v) const;
    const std::vector<Corner>& edge_sides(EdgeId e) const { return edge_sides_[e]; }

    // Corner fan around v in counterclockwise order. For boundary vertices
    // the fan starts at the corner whose outgoing side is a boundary edge.
    // Empty when the star could not be ordered (validate() reports why).
    const std::vector<Corner>& star(VertexId v) const;
    int star_degree(VertexId v) const; // number of incident triangles

    VertexReport vertex_report(VertexId v) const;
    double total_area() const;
    double perimeter() const;

    std::vector<Violation> validate() const;

    struct CurvatureCheck {
        std::vector<VertexId> positive; // interior vertices with omega < 2*pi - tol
        std::vector<VertexId> flat;     // interior vertices with |omega - 2*pi| <= tol
    };
    CurvatureCheck check_negative_curvature(double flat_tol = 1e-8) const;

    int euler_characteristic() const;
    int boundary_cycle_count() const;
    std::vector<VertexId> interior_vertices() const;

private:
    Geometry geometry_;
    std::vector<double> edge_lengths_;
    std::vector<Triangle> triangles_;
    int vertex_count_ = 0;
    std::map<std::string, std::string> metadata_;

    // Derived.
    std::vector<std::vector<Corner>> edge_sides_;   // per edge: referencing sides
    std::vector<std::vector<Corner>> corners_at_;   // per vertex: unordered corners
    std::vector<std::vector<Corner>> stars_;        // per vertex: ordered fan ('' on failure)
    std::vector<bool> vertex_on_boundary_;
    std::vector<Violation> structural_violations_;

    void build_derived();
};

} // namespace coneflat
