#pragma once

#include <optional>
#include <string>

#include "coneflat/mesh.hpp"

namespace coneflat {

// One evaluated inequality: lhs is always the squared perimeter, slack is
// lhs - rhs. Nonnegative slack certifies the inequality on this instance;
// the checkers never judge, they only report.
struct InequalityCheck {
    std::string id; // "Eq1", "Eq2" or "Eq3"
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
};

struct IsoperimetricReport {
    Geometry geometry;
    double perimeter = 0;
    double area = 0;
    double kappa_plus = 0; // sum of positive interior curvatures
    InequalityCheck primary;
    std::optional<InequalityCheck> alexandrov;
};

// Sum of max(curvature, 0) over interior vertices.
double positive_curvature_sum(const ConeMesh& mesh);

// Eq1 (euclidean, L^2 >= 4 pi A) or Eq2 (hyperbolic, L^2 >= 4 pi A + A^2).
IsoperimetricReport check_isoperimetric(const ConeMesh& mesh);

// Eq3: L^2 >= 2 (2 pi - kappa_plus) A - k A^2. Reduces to Eq1/Eq2 when
// kappa_plus = 0.
InequalityCheck check_alexandrov(const ConeMesh& mesh);

// Sum_int (2 pi - omega) + Sum_bdry (pi - theta) + k A - 2 pi chi.
// Zero (to rounding) for every consistent mesh.
double gauss_bonnet_residual(const ConeMesh& mesh);

} // namespace coneflat
