#include "resolve.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "evdom/errors.hpp"
#include "evdom/fixtures.hpp"
#include "evdom/graph_io.hpp"
#include "evdom/matrix_io.hpp"

namespace evdom::cli {
namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double number(std::string_view s, std::string_view what) {
  if (s == "pi") return std::numbers::pi;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kParse, std::string(what) + ": cannot parse '" + std::string(s) + "'");
  }
  return v;
}

long long integer(std::string_view s, std::string_view what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, std::string(what) + ": expected an integer, got '" +
                                       std::string(s) + "'");
  }
  return v;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

Generator resolve_interval(const std::vector<std::string>& f, const Tolerances& tol,
                           DirichletNodes nodes) {
  if (f.size() < 3) throw Error(ErrorCode::kParse, "interval spec needs interval:<bc>:<n>");
  IntervalSpec spec;
  spec.bc = parse_boundary_condition(f[1]);
  spec.n = static_cast<int>(integer(f[2], "interval cells"));
  spec.dirichlet_nodes = nodes;
  for (std::size_t k = 3; k < f.size(); ++k) {
    if (starts_with(f[k], "coeff=")) {
      const Vector c = read_vector_file(f[k].substr(6));
      spec.coeff.assign(c.data(), c.data() + c.size());
    } else if (k == 3) {
      spec.length = number(f[k], "interval length");
    } else {
      throw Error(ErrorCode::kParse, "unexpected interval field '" + f[k] + "'");
    }
  }
  return assemble_interval(spec, tol);
}

Generator resolve_metric(const std::vector<std::string>& f, const Tolerances& tol) {
  if (f.size() < 3 || f.size() > 4) {
    throw Error(ErrorCode::kParse, "metric spec needs metric:<file>:<cells>[:identify=v1,v2]");
  }
  MetricGraphSpec spec = read_metric_graph_file(f[1]);
  spec.cells_per_edge = static_cast<int>(integer(f[2], "cells per edge"));
  Generator g = assemble_metric_graph(spec, tol);
  if (f.size() == 4) {
    if (!starts_with(f[3], "identify=")) {
      throw Error(ErrorCode::kParse, "unexpected metric field '" + f[3] + "'");
    }
    const auto v = split(std::string_view(f[3]).substr(9), ',');
    if (v.size() != 2) throw Error(ErrorCode::kParse, "identify needs two vertices");
    const Eigen::Index v1 = integer(v[0], "vertex");
    const Eigen::Index v2 = integer(v[1], "vertex");
    const Generator merged = identify_vertices(g, v1, v2, tol);
    Generator lifted = lift_to_ambient(merged, identification_embedding(g.dim(), v1, v2),
                                       *g.weight, 0.0, tol);
    lifted.vertex_dofs = g.vertex_dofs;
    return lifted;
  }
  return g;
}

Generator resolve_base(std::string_view base, const Tolerances& tol, DirichletNodes nodes) {
  const auto f = split(base, ':');
  const std::string& head = f.front();
  if (head == "interval") return resolve_interval(f, tol, nodes);
  if (head == "metric") return resolve_metric(f, tol);
  if (head == "fixture") {
    if (f.size() != 2) throw Error(ErrorCode::kParse, "fixture spec needs fixture:<name>");
    return fixture(f[1], tol);
  }
  if (head == "graph") {
    if (f.size() != 3) throw Error(ErrorCode::kParse, "graph spec needs graph:<file>:<kind>");
    GraphSpec spec = read_graph_file(f[1]);
    spec.kind = parse_graph_kind(f[2]);
    return assemble_graph(spec, tol);
  }
  std::string matrix_path(base);
  std::optional<WeightVector> w;
  if (head == "file") {
    if (f.size() < 2 || f.size() > 3) {
      throw Error(ErrorCode::kParse, "file spec needs file:<matrix>[:<weight>]");
    }
    matrix_path = f[1];
    if (f.size() == 3) w = WeightVector(read_vector_file(f[2]));
  }
  return Generator::make(read_matrix_file(matrix_path), std::move(w), matrix_path, tol);
}

bool has_dirichlet_end(std::string_view spec) {
  return starts_with(spec, "interval:dirichlet:") || starts_with(spec, "interval:mixed:");
}

}  // namespace

Generator resolve_operator(std::string_view spec, const Tolerances& tol, DirichletNodes nodes) {
  const auto parts = split(spec, '@');
  if (parts.front().empty()) throw Error(ErrorCode::kParse, "empty operator spec");
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k] == "killed") nodes = DirichletNodes::kKilled;
  }
  Generator g = resolve_base(parts.front(), tol, nodes);
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const std::string& m = parts[k];
    if (m == "killed") continue;
    if (m == "square") {
      g = square_generator(g, tol);
    } else if (starts_with(m, "scale=")) {
      g = scale_generator(g, number(std::string_view(m).substr(6), "scale"), tol);
    } else if (starts_with(m, "shift=")) {
      g = shift_generator(g, number(std::string_view(m).substr(6), "shift"), tol);
    } else {
      throw Error(ErrorCode::kParse, "unknown modifier '" + m + "'");
    }
  }
  g.label = std::string(spec);
  return g;
}

std::pair<Generator, Generator> resolve_pair(std::string_view a, std::string_view b,
                                             const Tolerances& tol) {
  Generator ga = resolve_operator(a, tol);
  Generator gb = resolve_operator(b, tol);
  if (ga.dim() == gb.dim()) return {std::move(ga), std::move(gb)};
  Generator ka = has_dirichlet_end(a) ? resolve_operator(a, tol, DirichletNodes::kKilled) : ga;
  Generator kb = has_dirichlet_end(b) ? resolve_operator(b, tol, DirichletNodes::kKilled) : gb;
  const std::pair<const Generator*, const Generator*> tries[] = {
      {&ka, &gb}, {&ga, &kb}, {&ka, &kb}};
  for (const auto& [x, y] : tries) {
    if (x->dim() == y->dim()) return {*x, *y};
  }
  throw Error(ErrorCode::kDimensionMismatch,
              "operators have dimensions " + std::to_string(ga.dim()) + " and " +
                  std::to_string(gb.dim()));
}

ComparisonVector resolve_comparison(std::string_view spec, const Generator& a,
                                    const Generator& b, const Tolerances& tol) {
  if (spec.empty() || spec == "ones") return ComparisonVector::ones(a.dim());
  if (spec == "ground-a" || spec == "ground-b") {
    const Generator& g = spec == "ground-a" ? a : b;
    Vector v;
    if (g.self_adjoint) {
      v = eig_weighted_symmetric(g.matrix, *g.weight, tol).vectors.col(0);
    } else {
      const auto cert = eventual_strong_positivity_certificate(
          g, ComparisonVector::ones(g.dim()), tol);
      if (!cert) {
        throw Error(ErrorCode::kNoStrongPositivity,
                    "no positive ground state for " + g.label + ": " + cert.detail);
      }
      v = cert.certificate->right;
    }
    if (v.sum() < 0.0) v = -v;
    return ComparisonVector(std::move(v));
  }
  return ComparisonVector(read_vector_file(std::string(spec)));
}

Vector resolve_vector(std::string_view spec) {
  if (spec.find(',') == std::string_view::npos && spec.find_first_not_of("0123456789.eE+-") !=
                                                       std::string_view::npos) {
    return read_vector_file(std::string(spec));
  }
  const auto f = split(spec, ',');
  Vector v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t k = 0; k < f.size(); ++k) {
    v[static_cast<Eigen::Index>(k)] = number(f[k], "vector entry");
  }
  return v;
}

}  // namespace evdom::cli
