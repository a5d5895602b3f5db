#include "coneflat/io.hpp"

#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coneflat {

namespace {

using nlohmann::json;

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20)
                out += fmt::format("\\u{:04x}", static_cast<unsigned char>(ch));
            else
                out += ch;
        }
    }
    return out;
}

int line_of_byte(const std::string& text, size_t byte) {
    int line = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

int require_int(const json& j, const char* what) {
    if (!j.is_number_integer())
        throw ParseError(0, fmt::format("{} must be an integer", what));
    return j.get<int>();
}

} // namespace

ValidationError::ValidationError(std::vector<Violation> violations_)
    : Error([&] {
          std::string msg = "mesh validation failed:";
          for (const Violation& v : violations_) {
              msg += fmt::format("\n  {}: {}", violation_name(v.kind), v.message);
          }
          return msg;
      }()),
      violations(std::move(violations_)) {}

std::string mesh_to_string(const ConeMesh& mesh) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"format_version\": " << kMeshFormatVersion << ",\n";
    out << "  \"geometry\": \""
        << (mesh.geometry().is_euclidean() ? "euclidean" : "hyperbolic") << "\",\n";

    out << "  \"edges\": [\n";
    for (int e = 0; e < mesh.edge_count(); ++e)
        out << fmt::format("    {{\"length\": {:.17g}}}{}\n", mesh.edge_length(e),
                           e + 1 < mesh.edge_count() ? "," : "");
    out << "  ],\n";

    out << "  \"triangles\": [\n";
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const Triangle& tri = mesh.triangle(t);
        out << fmt::format("    {{\"v\": [{}, {}, {}], \"e\": [{}, {}, {}]}}{}\n",
                           tri.v[0], tri.v[1], tri.v[2], tri.e[0], tri.e[1], tri.e[2],
                           t + 1 < mesh.triangle_count() ? "," : "");
    }
    out << "  ],\n";

    out << "  \"metadata\": {";
    bool first = true;
    for (const auto& [key, value] : mesh.metadata()) {
        out << (first ? "\n" : ",\n");
        out << "    \"" << escape(key) << "\": \"" << escape(value) << "\"";
        first = false;
    }
    out << (first ? "}\n" : "\n  }\n");
    out << "}\n";
    return out.str();
}

ConeMesh mesh_from_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(line_of_byte(text, err.byte), err.what());
    }
    if (!doc.is_object()) throw ParseError(1, "top-level value is not an object");

    if (!doc.contains("format_version"))
        throw ParseError(1, "missing format_version");
    int version = require_int(doc["format_version"], "format_version");
    if (version != kMeshFormatVersion)
        throw ParseError(1, fmt::format("unsupported format_version {}", version));

    if (!doc.contains("geometry") || !doc["geometry"].is_string())
        throw ParseError(1, "missing geometry string");
    std::string geometry_name = doc["geometry"].get<std::string>();
    Geometry geometry;
    if (geometry_name == "euclidean")
        geometry = Geometry::euclidean();
    else if (geometry_name == "hyperbolic")
        geometry = Geometry::hyperbolic();
    else
        throw ParseError(1, fmt::format("unknown geometry \"{}\"", geometry_name));

    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw ParseError(1, "missing edges array");
    std::vector<double> lengths;
    for (const json& item : doc["edges"]) {
        if (!item.is_object() || !item.contains("length") || !item["length"].is_number())
            throw ParseError(0, fmt::format("edge {} has no numeric length", lengths.size()));
        lengths.push_back(item["length"].get<double>());
    }
    const int edge_count = static_cast<int>(lengths.size());

    if (!doc.contains("triangles") || !doc["triangles"].is_array())
        throw ParseError(1, "missing triangles array");
    std::vector<Triangle> triangles;
    int max_vertex = -1;
    for (const json& item : doc["triangles"]) {
        const int t = static_cast<int>(triangles.size());
        if (!item.is_object() || !item.contains("v") || !item.contains("e") ||
            !item["v"].is_array() || item["v"].size() != 3 || !item["e"].is_array() ||
            item["e"].size() != 3)
            throw ParseError(0, fmt::format("triangle {} needs v and e triples", t));
        Triangle tri;
        for (int i = 0; i < 3; ++i) {
            tri.v[i] = require_int(item["v"][i], "vertex id");
            tri.e[i] = require_int(item["e"][i], "edge id");
            if (tri.v[i] < 0)
                throw ParseError(0, fmt::format("triangle {} has negative vertex id {}", t, tri.v[i]));
            if (tri.e[i] < 0 || tri.e[i] >= edge_count)
                throw ParseError(0, fmt::format("triangle {} references edge {} (have {})", t,
                                                tri.e[i], edge_count));
            max_vertex = std::max(max_vertex, tri.v[i]);
        }
        triangles.push_back(tri);
    }

    std::map<std::string, std::string> metadata;
    if (doc.contains("metadata")) {
        if (!doc["metadata"].is_object()) throw ParseError(0, "metadata must be an object");
        for (const auto& [key, value] : doc["metadata"].items()) {
            if (!value.is_string())
                throw ParseError(0, fmt::format("metadata value for \"{}\" must be a string", key));
            metadata[key] = value.get<std::string>();
        }
    }

    ConeMesh mesh(geometry, std::move(lengths), std::move(triangles), max_vertex + 1,
                  std::move(metadata));
    auto violations = mesh.validate();
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return mesh;
}

ConeMesh load_mesh(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(fmt::format("cannot open {}", path));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return mesh_from_string(buffer.str());
}

void save_mesh(const ConeMesh& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write {}", path));
    out << mesh_to_string(mesh);
}

} // namespace coneflat
