#pragma once

#include <optional>
#include <vector>

#include "hypres/rational.hpp"

namespace hypres {

using RMatrix = std::vector<std::vector<Rational>>;
using RVector = std::vector<Rational>;

// Exact Gaussian elimination.  Returns nullopt for singular systems.
std::optional<RVector> rational_solve(RMatrix a, RVector b);

// Solves the (possibly overdetermined) system A x = b exactly; nullopt when
// inconsistent or underdetermined in a way that leaves pivots ambiguous.
std::optional<RVector> rational_solve_overdetermined(RMatrix a, RVector b);

Rational rational_det(RMatrix a);

std::optional<RMatrix> rational_inverse(const RMatrix& a);

RMatrix rational_matmul(const RMatrix& a, const RMatrix& b);

}  // namespace hypres
