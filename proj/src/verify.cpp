#include "coneflat/verify.hpp"

#include <cmath>

namespace coneflat {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

double positive_curvature_sum(const ConeMesh& mesh) {
    double sum = 0;
    for (VertexId v : mesh.interior_vertices())
        sum += std::max(mesh.vertex_report(v).curvature, 0.0);
    return sum;
}

IsoperimetricReport check_isoperimetric(const ConeMesh& mesh) {
    IsoperimetricReport report;
    report.geometry = mesh.geometry();
    report.perimeter = mesh.perimeter();
    report.area = mesh.total_area();
    report.kappa_plus = positive_curvature_sum(mesh);

    double l2 = report.perimeter * report.perimeter;
    if (mesh.geometry().is_euclidean())
        report.primary = {"Eq1", l2, 4.0 * M_PI * report.area, 0};
    else
        report.primary = {"Eq2", l2, 4.0 * M_PI * report.area + report.area * report.area, 0};
    report.primary.slack = report.primary.lhs - report.primary.rhs;
    return report;
}

InequalityCheck check_alexandrov(const ConeMesh& mesh) {
    double l = mesh.perimeter();
    double a = mesh.total_area();
    double kappa_plus = positive_curvature_sum(mesh);
    double k = mesh.geometry().k();
    InequalityCheck check{"Eq3", l * l, 2.0 * (kTwoPi - kappa_plus) * a - k * a * a, 0};
    check.slack = check.lhs - check.rhs;
    return check;
}

double gauss_bonnet_residual(const ConeMesh& mesh) {
    double sum = 0;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        if (mesh.star_degree(v) == 0) continue;
        sum += mesh.vertex_report(v).curvature;
    }
    return sum + mesh.geometry().k() * mesh.total_area() -
           kTwoPi * mesh.euler_characteristic();
}

} // namespace coneflat
