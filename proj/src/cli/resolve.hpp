#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "evdom/operators.hpp"

namespace evdom::cli {

// Operator specs:
//   path | file:<matrix>[:<weight>]
//   interval:<bc>:<n>[:<length>][:coeff=<vector file>]   length may be "pi"
//   graph:<file>:<kind>
//   metric:<file>:<cells>[:identify=<v1>,<v2>]
//   fixture:<name>
// followed by any number of "@scale=c", "@shift=a", "@square", "@killed".
//
// metric specs with identify= return the merged generator lifted back onto
// the original degrees of freedom so it can be compared with the unmerged one.
Generator resolve_operator(std::string_view spec, const Tolerances& tol = {},
                           DirichletNodes nodes = DirichletNodes::kEliminated);

/// Resolves both specs; when the dimensions differ, interval specs with a
/// Dirichlet end are re-assembled with killed boundary nodes.
std::pair<Generator, Generator> resolve_pair(std::string_view a, std::string_view b,
                                             const Tolerances& tol = {});

/// ones | ground-a | ground-b | <vector file>
ComparisonVector resolve_comparison(std::string_view spec, const Generator& a,
                                    const Generator& b, const Tolerances& tol = {});

/// "1,0,2" or a vector file.
Vector resolve_vector(std::string_view spec);

}  // namespace evdom::cli
