#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "coneflat/errors.hpp"
#include "coneflat/gen.hpp"
#include "coneflat/io.hpp"
#include "coneflat/svg.hpp"

using namespace coneflat;

namespace {
const Geometry E = Geometry::euclidean();
const Geometry H = Geometry::hyperbolic();
} // namespace

TEST_CASE("round trip is bit-exact") {
    for (ConeMesh mesh : {gen_cone_disk({E, 6, 0.9, 1.0}), gen_random_disk(5, 4, 9, H)}) {
        std::string text = mesh_to_string(mesh);
        ConeMesh back = mesh_from_string(text);
        CHECK(back.geometry() == mesh.geometry());
        CHECK(back.vertex_count() == mesh.vertex_count());
        REQUIRE(back.edge_count() == mesh.edge_count());
        for (int e = 0; e < mesh.edge_count(); ++e)
            CHECK(back.edge_length(e) == mesh.edge_length(e)); // bitwise
        REQUIRE(back.triangle_count() == mesh.triangle_count());
        for (int t = 0; t < mesh.triangle_count(); ++t) {
            CHECK(back.triangle(t).v == mesh.triangle(t).v);
            CHECK(back.triangle(t).e == mesh.triangle(t).e);
        }
        CHECK(back.metadata() == mesh.metadata());
        CHECK(mesh_to_string(back) == text);
    }
}

TEST_CASE("file round trip") {
    auto dir = std::filesystem::temp_directory_path() / "coneflat_io_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "fan.json").string();
    ConeMesh fan = gen_cone_disk({E, 6, 1.0, 1.0});
    save_mesh(fan, path);
    ConeMesh back = load_mesh(path);
    for (int e = 0; e < fan.edge_count(); ++e)
        CHECK(back.edge_length(e) == fan.edge_length(e));
    std::filesystem::remove_all(dir);
}

TEST_CASE("parse errors carry locations") {
    CHECK_THROWS_AS(mesh_from_string("{ not json"), ParseError);
    CHECK_THROWS_AS(mesh_from_string("[1, 2, 3]"), ParseError);
    CHECK_THROWS_AS(mesh_from_string(R"({"format_version": 7, "geometry": "euclidean",
        "edges": [], "triangles": []})"),
                    ParseError);
    CHECK_THROWS_AS(mesh_from_string(R"({"format_version": 1, "geometry": "spherical",
        "edges": [], "triangles": []})"),
                    ParseError);
}

TEST_CASE("out-of-range edge reference names the triangle") {
    std::string text = R"({
  "format_version": 1,
  "geometry": "euclidean",
  "edges": [
    {"length": 3}, {"length": 4}, {"length": 5}
  ],
  "triangles": [
    {"v": [0, 1, 2], "e": [0, 1, 999]}
  ],
  "metadata": {}
})";
    try {
        mesh_from_string(text);
        FAIL("expected ParseError");
    } catch (const ParseError& err) {
        std::string msg = err.what();
        CHECK(msg.find("999") != std::string::npos);
        CHECK(msg.find("triangle 0") != std::string::npos);
    }
}

TEST_CASE("invalid geometry data still parses but fails validation") {
    std::string text = R"({
  "format_version": 1,
  "geometry": "euclidean",
  "edges": [
    {"length": 1}, {"length": 1}, {"length": 2.5}
  ],
  "triangles": [
    {"v": [0, 1, 2], "e": [0, 1, 2]}
  ],
  "metadata": {}
})";
    try {
        mesh_from_string(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& err) {
        REQUIRE(!err.violations.empty());
        CHECK(err.violations[0].kind == ViolationKind::TriangleInequality);
    }
}

TEST_CASE("svg export draws one polygon per triangle") {
    ConeMesh fan = gen_cone_disk({E, 6, 1.0, 1.0});
    std::string svg = coneflat::svg_from_mesh(fan);
    CHECK(svg.rfind("<svg", 0) == 0);
    size_t polygons = 0;
    for (size_t at = svg.find("<polygon"); at != std::string::npos;
         at = svg.find("<polygon", at + 1))
        ++polygons;
    CHECK(polygons == 6);
    CHECK(svg.find("</svg>") != std::string::npos);

    // Hyperbolic meshes develop through the Klein projection.
    std::string hyp = coneflat::svg_from_mesh(gen_random_disk(3, 2, 6, H));
    CHECK(hyp.find("Klein") != std::string::npos);
}

TEST_CASE("serialization uses 17 significant digits") {
    ConeMesh mesh(E, {0.1, 0.2, 0.25}, {Triangle{{0, 1, 2}, {0, 1, 2}}}, 3);
    std::string text = mesh_to_string(mesh);
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    ConeMesh back = mesh_from_string(text);
    CHECK(back.edge_length(0) == 0.1);
    CHECK(back.edge_length(1) == 0.2);
    CHECK(back.edge_length(2) == 0.25);
}
