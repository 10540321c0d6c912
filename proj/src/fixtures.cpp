#include "evdom/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "evdom/errors.hpp"
#include "evdom/operators.hpp"

namespace evdom {

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "ex34A", "ex34B", "ex35A", "ex35B", "neumann-pi", "dirichlet-plus2-pi",
      "diag-minus2", "diag-minus1"};
  return names;
}

Matrix ex35_basis() {
  Matrix u(3, 3);
  const double a = 1.0 / std::sqrt(3.0);
  const double b = 1.0 / std::sqrt(2.0);
  const double c = 1.0 / std::sqrt(6.0);
  u << a, -b, c,
       a, 0.0, -2.0 * c,
       a, b, c;
  return u;
}

namespace {

constexpr int kPiCells = 200;

IntervalSpec pi_interval(BoundaryCondition bc) {
  IntervalSpec spec;
  spec.n = kPiCells;
  spec.bc = bc;
  spec.length = std::numbers::pi;
  spec.dirichlet_nodes = DirichletNodes::kKilled;
  return spec;
}

Generator relabel(Generator g, std::string_view name) {
  g.label = "fixture:" + std::string(name);
  return g;
}

}  // namespace

Generator fixture(std::string_view name, const Tolerances& tol) {
  const std::string label = "fixture:" + std::string(name);
  if (name == "ex34A" || name == "ex34B") {
    Matrix p(2, 2);
    if (name == "ex34A") {
      p << 1, 2, 1, 2;
    } else {
      p << 2, 1, 2, 1;
    }
    p /= 3.0;
    return Generator::make(p - Matrix::Identity(2, 2), std::nullopt, label, tol);
  }
  if (name == "ex35A" || name == "ex35B") {
    Matrix d = Matrix::Zero(3, 3);
    if (name == "ex35A") {
      d(1, 1) = -1;
      d(2, 2) = -1;
    } else {
      d << 0, 0, 0,
           0, -1, 1,
           0, -1, -1;
    }
    const Matrix u = ex35_basis();
    Matrix a = u * d * u.transpose();
    std::optional<WeightVector> w;
    if (name == "ex35A") {
      a = 0.5 * (a + a.transpose()).eval();
      w = WeightVector::ones(3);
    }
    return Generator::make(std::move(a), std::move(w), label, tol);
  }
  if (name == "neumann-pi") {
    return relabel(assemble_interval(pi_interval(BoundaryCondition::kNeumann), tol), name);
  }
  if (name == "dirichlet-plus2-pi") {
    Generator g = assemble_interval(pi_interval(BoundaryCondition::kDirichlet), tol);
    return relabel(shift_generator(g, 2.0, tol), name);
  }
  if (name == "diag-minus2" || name == "diag-minus1") {
    Matrix a(1, 1);
    a(0, 0) = name == "diag-minus2" ? -2.0 : -1.0;
    return Generator::make(std::move(a), WeightVector::ones(1), label, tol);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown fixture '" + std::string(name) + "'");
}

}  // namespace evdom
