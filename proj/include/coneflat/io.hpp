#pragma once

#include <string>
#include <vector>

#include "coneflat/errors.hpp"
#include "coneflat/mesh.hpp"

namespace coneflat {

inline constexpr int kMeshFormatVersion = 1;

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct ValidationError : Error {
    std::vector<Violation> violations;
    explicit ValidationError(std::vector<Violation> violations_);
};

// Canonical text form: fixed field order, one edge/triangle per line,
// lengths with 17 significant digits so reloading is bit-exact.
std::string mesh_to_string(const ConeMesh& mesh);
ConeMesh mesh_from_string(const std::string& text);

ConeMesh load_mesh(const std::string& path);
void save_mesh(const ConeMesh& mesh, const std::string& path);

} // namespace coneflat
