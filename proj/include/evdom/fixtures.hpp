#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "evdom/semigroup.hpp"

namespace evdom {

/// Names accepted by fixture(): ex34A, ex34B, ex35A, ex35B, neumann-pi,
/// dirichlet-plus2-pi, diag-minus2, diag-minus1.
const std::vector<std::string>& fixture_names();

/// Built-in generators. The two discretized fixtures use n = 200 cells on
/// (0, pi); dirichlet-plus2-pi keeps its boundary nodes (killed) so that it
/// lives on the same nodes as neumann-pi.
Generator fixture(std::string_view name, const Tolerances& tol = {});

/// Columns u_1, u_2, u_3 of the orthonormal basis used by ex35A/ex35B.
Matrix ex35_basis();

}  // namespace evdom
