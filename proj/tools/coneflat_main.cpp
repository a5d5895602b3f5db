#include <atomic>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "coneflat/errors.hpp"
#include "coneflat/flatten.hpp"
#include "coneflat/gen.hpp"
#include "coneflat/io.hpp"
#include "coneflat/svg.hpp"
#include "coneflat/verify.hpp"

namespace {

using namespace coneflat;

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("CONE_FLATTEN_LOG");
    if (!env) return LogLevel::Info;
    std::string value = env;
    if (value == "quiet") return LogLevel::Quiet;
    if (value == "debug") return LogLevel::Debug;
    return LogLevel::Info;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::cerr << msg << "\n";
}

Geometry parse_geometry(const std::string& name) {
    if (name == "euclidean") return Geometry::euclidean();
    if (name == "hyperbolic") return Geometry::hyperbolic();
    throw InvalidSpec(fmt::format("unknown geometry \"{}\"", name));
}

SelectionPolicy parse_policy(const std::string& name) {
    if (name == "min-degree") return min_degree_policy();
    if (name == "lowest-id") return lowest_id_policy();
    if (name == "max-excess") return max_excess_policy();
    throw InvalidSpec(fmt::format("unknown policy \"{}\"", name));
}

int run_validate(const std::string& path) {
    ConeMesh mesh = [&] {
        try {
            return load_mesh(path);
        } catch (const ValidationError& err) {
            std::cout << err.what() << "\n";
            std::exit(2);
        }
    }();
    auto violations = mesh.validate();
    if (violations.empty()) {
        log_info(fmt::format("{}: valid ({} vertices, {} edges, {} triangles)", path,
                             mesh.vertex_count(), mesh.edge_count(), mesh.triangle_count()));
        return 0;
    }
    for (const Violation& v : violations)
        std::cout << violation_name(v.kind) << ": " << v.message << "\n";
    return 2;
}

int run_flatten(const std::string& in_path, const std::string& out_path,
                const std::string& report_path, double tol, const std::string& policy_name) {
    ConeMesh mesh = load_mesh(in_path);
    FlattenOptions options;
    options.flat_tol = tol;
    options.policy = parse_policy(policy_name);
    options.observer = [](const FlattenEvent& event) {
        if (event.kind == FlattenEvent::Kind::Deformed)
            log_debug(fmt::format("deformed star of vertex {} with t0 = {:.17g}", event.vertex,
                                  event.t0));
        else
            log_debug(fmt::format("removed flat vertex {} ({} vertices left)", event.vertex,
                                  event.after.vertex_count()));
    };

    FlattenResult result = flatten(mesh, options);
    save_mesh(result.mesh, out_path);
    log_info(fmt::format("flattened {} in {} steps; area {:.12g} -> {:.12g}, perimeter {:.12g}",
                         in_path, result.steps.size(), mesh.total_area(),
                         result.mesh.total_area(), result.mesh.perimeter()));

    if (!report_path.empty()) {
        std::ofstream report(report_path);
        if (!report) throw Error(fmt::format("cannot write {}", report_path));
        int index = 1;
        for (const DeformationStep& step : result.steps) {
            report << fmt::format(
                "{{\"step\": {}, \"vertex\": {}, \"t0\": {:.17g}, \"flattened\": {}, "
                "\"area_before\": {:.17g}, \"area_after\": {:.17g}, \"perimeter\": {:.17g}, "
                "\"interior_singular_after\": {}}}\n",
                index++, step.chosen_vertex, step.t0, step.flattened_vertex, step.area_before,
                step.area_after, step.perimeter, step.interior_singular_count_after);
        }
    }
    return 0;
}

std::string check_report_text(const std::string& path, bool alexandrov) {
    ConeMesh mesh = load_mesh(path);
    IsoperimetricReport report = check_isoperimetric(mesh);
    std::string out;
    out += fmt::format("file: {}\n", path);
    out += fmt::format("geometry: {}\n",
                       mesh.geometry().is_euclidean() ? "euclidean" : "hyperbolic");
    out += fmt::format("L: {:.12g}\n", report.perimeter);
    out += fmt::format("A: {:.12g}\n", report.area);
    out += fmt::format("kappa_plus: {:.12g}\n", report.kappa_plus);
    out += fmt::format("{}: lhs={:.12g} rhs={:.12g} slack={:.12g}\n", report.primary.id,
                       report.primary.lhs, report.primary.rhs, report.primary.slack);
    if (alexandrov) {
        InequalityCheck eq3 = check_alexandrov(mesh);
        out += fmt::format("{}: lhs={:.12g} rhs={:.12g} slack={:.12g}\n", eq3.id, eq3.lhs,
                           eq3.rhs, eq3.slack);
    }
    out += fmt::format("gauss_bonnet_residual: {:.6g}\n", gauss_bonnet_residual(mesh));
    return out;
}

int run_check(const std::vector<std::string>& paths, bool alexandrov, int jobs) {
    if (paths.size() == 1 || jobs <= 1) {
        for (const std::string& path : paths) std::cout << check_report_text(path, alexandrov);
        return 0;
    }
    // Fan out over instances only; within-instance work stays sequential.
    std::vector<std::string> outputs(paths.size());
    std::vector<std::string> failures(paths.size());
    std::atomic<size_t> cursor{0};
    auto worker = [&] {
        for (size_t i = cursor.fetch_add(1); i < paths.size(); i = cursor.fetch_add(1)) {
            try {
                outputs[i] = check_report_text(paths[i], alexandrov);
            } catch (const std::exception& err) {
                failures[i] = err.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < std::min<int>(jobs, static_cast<int>(paths.size())); ++i)
        pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (size_t i = 0; i < paths.size(); ++i) {
        if (!failures[i].empty()) throw Error(failures[i]);
        std::cout << outputs[i];
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cone-metric flattening and isoperimetric checks"};
    app.require_subcommand(1);

    auto* validate_cmd = app.add_subcommand("validate", "check a mesh file");
    std::string validate_path;
    validate_cmd->add_option("mesh", validate_path, "mesh file")->required();

    auto* flatten_cmd = app.add_subcommand("flatten", "eliminate interior cone points");
    std::string flatten_in, flatten_out, flatten_report, flatten_policy = "min-degree";
    double flatten_tol = kFlatTol;
    flatten_cmd->add_option("mesh", flatten_in, "input mesh")->required();
    flatten_cmd->add_option("-o,--output", flatten_out, "output mesh")->required();
    flatten_cmd->add_option("--report", flatten_report, "step report (one JSON record per line)");
    flatten_cmd->add_option("--tol", flatten_tol, "flat-vertex tolerance");
    flatten_cmd->add_option("--policy", flatten_policy,
                            "vertex selection: min-degree | lowest-id | max-excess");

    auto* check_cmd = app.add_subcommand("check", "isoperimetric report");
    std::vector<std::string> check_paths;
    bool check_alex = false;
    int check_jobs = 1;
    check_cmd->add_option("mesh", check_paths, "mesh files")->required();
    check_cmd->add_flag("--alexandrov", check_alex, "also evaluate the Eq3 bound");
    check_cmd->add_option("--jobs", check_jobs, "parallel workers over input files");

    auto* gen_cmd = app.add_subcommand("gen", "generate instances");
    gen_cmd->require_subcommand(1);
    auto* cone_cmd = gen_cmd->add_subcommand("cone", "isoceles fan around one apex");
    std::string cone_geometry = "euclidean", cone_out;
    int cone_sectors = 6;
    double cone_legs = 1.0, cone_base = 1.0;
    cone_cmd->add_option("--geometry", cone_geometry, "euclidean | hyperbolic");
    cone_cmd->add_option("--sectors", cone_sectors, "number of sectors (>= 3)")->required();
    cone_cmd->add_option("--legs", cone_legs, "spoke length")->required();
    cone_cmd->add_option("--base", cone_base,
                         "base length (euclidean) or sector apex angle (hyperbolic)")
        ->required();
    cone_cmd->add_option("-o,--output", cone_out, "output mesh")->required();

    auto* random_cmd = gen_cmd->add_subcommand("random", "seeded negatively-curved disk");
    std::string random_geometry = "euclidean", random_out;
    uint64_t random_seed = 0;
    int random_interior = 0, random_boundary = 8;
    random_cmd->add_option("--seed", random_seed, "random seed")->required();
    random_cmd->add_option("--interior", random_interior, "interior vertex count");
    random_cmd->add_option("--boundary", random_boundary, "boundary vertex count (>= 3)");
    random_cmd->add_option("--geometry", random_geometry, "euclidean | hyperbolic");
    random_cmd->add_option("-o,--output", random_out, "output mesh")->required();

    auto* svg_cmd = app.add_subcommand("export-svg", "draw a development of the mesh");
    std::string svg_in, svg_out;
    svg_cmd->add_option("mesh", svg_in, "input mesh")->required();
    svg_cmd->add_option("-o,--output", svg_out, "output SVG file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err); // prints message or help text
        return code == 0 ? 0 : 1; // usage problems exit 1
    }

    try {
        if (validate_cmd->parsed()) return run_validate(validate_path);
        if (flatten_cmd->parsed())
            return run_flatten(flatten_in, flatten_out, flatten_report, flatten_tol,
                               flatten_policy);
        if (check_cmd->parsed()) return run_check(check_paths, check_alex, check_jobs);
        if (cone_cmd->parsed()) {
            ConeDiskSpec spec{parse_geometry(cone_geometry), cone_sectors, cone_legs, cone_base};
            save_mesh(gen_cone_disk(spec), cone_out);
            log_info(fmt::format("wrote {}", cone_out));
            return 0;
        }
        if (random_cmd->parsed()) {
            ConeMesh mesh = gen_random_disk(random_seed, random_interior, random_boundary,
                                            parse_geometry(random_geometry));
            save_mesh(mesh, random_out);
            log_info(fmt::format("wrote {}", random_out));
            return 0;
        }
        if (svg_cmd->parsed()) {
            export_svg(load_mesh(svg_in), svg_out);
            log_info(fmt::format("wrote {}", svg_out));
            return 0;
        }
    } catch (const InvalidSpec& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
    return 1;
}
