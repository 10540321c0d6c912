// Python bindings. Reports cross the boundary as JSON text and are decoded
// by the package __init__, so Python sees the same schema as the CLI.

#include <sstream>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.hpp"
#include "evdom/domination.hpp"
#include "evdom/errors.hpp"
#include "evdom/fixtures.hpp"
#include "report_json.hpp"
#include "resolve.hpp"

namespace py = pybind11;
using namespace evdom;

namespace {

// A generator is a spec string, a square array, or a (matrix, weight) pair.
Generator to_generator(const py::handle& obj, const Tolerances& tol) {
  if (py::isinstance<py::str>(obj)) return cli::resolve_operator(obj.cast<std::string>(), tol);
  if (py::isinstance<py::tuple>(obj)) {
    const auto t = obj.cast<py::tuple>();
    if (t.size() != 2) throw Error(ErrorCode::kInvalidArgument, "expected (matrix, weight)");
    return Generator::make(t[0].cast<Matrix>(), WeightVector(t[1].cast<Vector>()), {}, tol);
  }
  return Generator::make(obj.cast<Matrix>(), std::nullopt, {}, tol);
}

std::pair<Generator, Generator> to_pair(const py::handle& a, const py::handle& b,
                                        const Tolerances& tol) {
  if (py::isinstance<py::str>(a) && py::isinstance<py::str>(b)) {
    return cli::resolve_pair(a.cast<std::string>(), b.cast<std::string>(), tol);
  }
  return {to_generator(a, tol), to_generator(b, tol)};
}

ComparisonVector to_comparison(const py::handle& u, const Generator& a, const Generator& b,
                               const Tolerances& tol) {
  if (u.is_none()) return ComparisonVector::ones(a.dim());
  if (py::isinstance<py::str>(u)) return cli::resolve_comparison(u.cast<std::string>(), a, b, tol);
  return ComparisonVector(u.cast<Vector>());
}

Tolerances make_tolerances(double tol_pos, double tol_gap) {
  Tolerances tol;
  if (tol_pos >= 0.0) tol.pos = tol_pos;
  if (tol_gap >= 0.0) tol.gap = tol_gap;
  return tol;
}

GridSpec to_grid(const std::string& grid) { return grid.empty() ? GridSpec{} : GridSpec::parse(grid); }

std::string decide(const py::object& a, const py::object& b, const py::object& u,
                   const std::string& grid, std::uint64_t seed, bool paper_faithful,
                   double tol_pos, double tol_gap) {
  const Tolerances tol = make_tolerances(tol_pos, tol_gap);
  const auto [ga, gb] = to_pair(a, b, tol);
  DecideOptions opts;
  opts.grid = to_grid(grid);
  opts.seed = seed;
  opts.paper_faithful = paper_faithful;
  const auto v = decide_eventual_domination(ga, gb, to_comparison(u, ga, gb, tol), opts, tol);
  return cli::dump17(cli::to_json(v), -1);
}

std::string certify(const py::object& a, const py::object& b, const py::object& u,
                    bool paper_faithful, double tol_pos, double tol_gap) {
  const Tolerances tol = make_tolerances(tol_pos, tol_gap);
  const auto [ga, gb] = to_pair(a, b, tol);
  const ComparisonVector cu = to_comparison(u, ga, gb, tol);
  const auto r = certify_uniform_time(ga, gb, cu, CertifyOptions{paper_faithful}, tol);
  const auto checks = verify_certificate(ga, gb, cu, r, {r.t1, 1.5 * r.t1 + 1.0, 3.0 * r.t1 + 2.0}, tol);
  return cli::dump17(cli::to_json(r, checks), -1);
}

std::string simulate(const py::object& a, const py::object& b, const std::string& grid) {
  const Tolerances tol;
  const auto [ga, gb] = to_pair(a, b, tol);
  return cli::dump17(cli::to_json(empirical_crossover(ga, gb, to_grid(grid), tol)), -1);
}

std::string orbit(const py::object& a, const py::object& b, const Vector& x,
                  const std::string& grid) {
  const Tolerances tol;
  const auto [ga, gb] = to_pair(a, b, tol);
  return cli::dump17(cli::to_json(orbit_compare(ga, gb, x, to_grid(grid), tol)), -1);
}

py::dict assemble(const py::object& spec) {
  const Generator g = to_generator(spec, Tolerances{});
  py::dict d;
  d["matrix"] = g.matrix;
  d["weight"] = g.weight ? py::cast(g.weight->values()) : py::none();
  d["label"] = g.label;
  d["self_adjoint"] = g.self_adjoint;
  d["vertex_dofs"] = g.vertex_dofs;
  d["warnings"] = g.warnings;
  return d;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> full{"evdom"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : full) argv.push_back(s.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_evdom, m) {
  m.doc() = "Eventual domination of matrix semigroups";

  // Messages start with the error code, e.g. "SpectralOrderViolated: ...".
  py::register_exception<Error>(m, "EvdomError", PyExc_RuntimeError);

  m.def("decide", &decide, py::arg("a"), py::arg("b"), py::arg("u") = py::none(),
        py::arg("grid") = "", py::arg("seed") = 42, py::arg("paper_faithful") = false,
        py::arg("tol_pos") = -1.0, py::arg("tol_gap") = -1.0);
  m.def("certify", &certify, py::arg("a"), py::arg("b"), py::arg("u") = py::none(),
        py::arg("paper_faithful") = false, py::arg("tol_pos") = -1.0, py::arg("tol_gap") = -1.0);
  m.def("simulate", &simulate, py::arg("a"), py::arg("b"), py::arg("grid") = "");
  m.def("orbit", &orbit, py::arg("a"), py::arg("b"), py::arg("x"), py::arg("grid") = "");
  m.def("assemble", &assemble, py::arg("spec"));
  m.def("fixture_names", &fixture_names);
  m.def("expm", [](const Matrix& a, double t) { return expm(a, t); }, py::arg("a"), py::arg("t"));
  m.def(
      "spectral_bound",
      [](const py::object& g) { return spectral_bound(to_generator(g, Tolerances{})); },
      py::arg("g"));
  m.def("run_cli", &run_cli, py::arg("args"));
}
