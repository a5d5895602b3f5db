#pragma once

#include <string>

#include "coneflat/mesh.hpp"

namespace coneflat {

// Develops the mesh triangle by triangle from a boundary seed edge and
// draws every edge (hyperbolic meshes through the Klein projection, so
// geodesics come out straight). Developments of cone-metrics may
// self-overlap; they are drawn as-is.
std::string svg_from_mesh(const ConeMesh& mesh);

void export_svg(const ConeMesh& mesh, const std::string& path);

} // namespace coneflat
