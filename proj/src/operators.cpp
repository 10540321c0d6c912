#include "evdom/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "evdom/errors.hpp"

namespace evdom {

std::string_view to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::kDirichlet: return "dirichlet";
    case BoundaryCondition::kNeumann: return "neumann";
    case BoundaryCondition::kMixedDN: return "mixed";
    case BoundaryCondition::kPeriodic: return "periodic";
    case BoundaryCondition::kNonLocalRobin: return "nonlocal";
  }
  return "unknown";
}

BoundaryCondition parse_boundary_condition(std::string_view name) {
  if (name == "dirichlet") return BoundaryCondition::kDirichlet;
  if (name == "neumann") return BoundaryCondition::kNeumann;
  if (name == "mixed") return BoundaryCondition::kMixedDN;
  if (name == "periodic") return BoundaryCondition::kPeriodic;
  if (name == "nonlocal") return BoundaryCondition::kNonLocalRobin;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown boundary condition '" + std::string(name) +
                  "' (dirichlet|neumann|mixed|periodic|nonlocal)");
}

namespace {

void validate_interval(const IntervalSpec& spec, const Tolerances& tol) {
  if (spec.n < 3) throw Error(ErrorCode::kInvalidArgument, "interval needs at least 3 cells");
  if (!(spec.length > 0.0) || !std::isfinite(spec.length)) {
    throw Error(ErrorCode::kInvalidArgument, "interval length must be positive");
  }
  if (spec.bc == BoundaryCondition::kNonLocalRobin && std::abs(spec.length - 1.0) > 1e-15) {
    throw Error(ErrorCode::kInvalidArgument, "non-local Robin conditions live on (0,1)");
  }
  if (!spec.coeff.empty()) {
    if (spec.coeff.size() != static_cast<std::size_t>(spec.n)) {
      throw Error(ErrorCode::kInvalidArgument, "coefficient needs one sample per cell");
    }
    for (std::size_t k = 0; k < spec.coeff.size(); ++k) {
      if (!(spec.coeff[k] >= tol.ellipticity) || !std::isfinite(spec.coeff[k])) {
        throw Error(ErrorCode::kEllipticityViolated,
                    "coefficient sample " + std::to_string(k) + " is below the ellipticity bound");
      }
    }
  }
}

// Neumann system on nodes 0..n.
FemSystem natural_system(const IntervalSpec& spec) {
  const int n = spec.n;
  const double h = spec.length / n;
  FemSystem sys{Matrix::Zero(n + 1, n + 1), Vector::Zero(n + 1)};
  for (int k = 0; k < n; ++k) {
    const double a = spec.coeff.empty() ? 1.0 : spec.coeff[static_cast<std::size_t>(k)];
    sys.stiffness(k, k) += a / h;
    sys.stiffness(k + 1, k + 1) += a / h;
    sys.stiffness(k, k + 1) -= a / h;
    sys.stiffness(k + 1, k) -= a / h;
    sys.mass[k] += h / 2;
    sys.mass[k + 1] += h / 2;
  }
  return sys;
}

FemSystem restrict_system(const FemSystem& full, Eigen::Index first, Eigen::Index count) {
  return {full.stiffness.block(first, first, count, count), full.mass.segment(first, count)};
}

Generator generator_from_system(const FemSystem& sys, std::string label,
                                const Tolerances& tol) {
  Matrix a = -(sys.mass.cwiseInverse().asDiagonal() * sys.stiffness);
  return Generator::make(std::move(a), WeightVector(sys.mass), std::move(label), tol);
}

std::string interval_label(const IntervalSpec& spec) {
  return "interval:" + std::string(to_string(spec.bc)) + ":" + std::to_string(spec.n);
}

}  // namespace

FemSystem assemble_interval_system(const IntervalSpec& spec, const Tolerances& tol) {
  validate_interval(spec, tol);
  const int n = spec.n;
  FemSystem full = natural_system(spec);
  switch (spec.bc) {
    case BoundaryCondition::kNeumann:
      return full;
    case BoundaryCondition::kNonLocalRobin:
      // boundary form (u(0) u(1)) [[1,1],[1,1]] (v(0) v(1))^T
      full.stiffness(0, 0) += 1.0;
      full.stiffness(0, n) += 1.0;
      full.stiffness(n, 0) += 1.0;
      full.stiffness(n, n) += 1.0;
      return full;
    case BoundaryCondition::kDirichlet:
      return restrict_system(full, 1, n - 1);
    case BoundaryCondition::kMixedDN:
      return restrict_system(full, 1, n);
    case BoundaryCondition::kPeriodic: {
      // dof j <-> node j+1; node 0 is node n.
      FemSystem sys{Matrix::Zero(n, n), Vector::Zero(n)};
      auto dof = [n](int node) { return node == 0 ? n - 1 : node - 1; };
      for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
          if (full.stiffness(i, j) != 0.0) sys.stiffness(dof(i), dof(j)) += full.stiffness(i, j);
        }
        sys.mass[dof(i)] += full.mass[i];
      }
      return sys;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unhandled boundary condition");
}

std::vector<double> interval_nodes(const IntervalSpec& spec) {
  const int n = spec.n;
  const double h = spec.length / n;
  const bool killed = spec.dirichlet_nodes == DirichletNodes::kKilled;
  int first = 0;
  int last = n;
  switch (spec.bc) {
    case BoundaryCondition::kNeumann:
    case BoundaryCondition::kNonLocalRobin:
      break;
    case BoundaryCondition::kDirichlet:
      if (!killed) {
        first = 1;
        last = n - 1;
      }
      break;
    case BoundaryCondition::kMixedDN:
      if (!killed) first = 1;
      break;
    case BoundaryCondition::kPeriodic:
      first = 1;
      break;
  }
  std::vector<double> x;
  for (int i = first; i <= last; ++i) x.push_back(i * h);
  return x;
}

Generator assemble_interval(const IntervalSpec& spec, const Tolerances& tol) {
  const FemSystem sys = assemble_interval_system(spec, tol);
  const bool has_dirichlet = spec.bc == BoundaryCondition::kDirichlet ||
                             spec.bc == BoundaryCondition::kMixedDN;
  std::string label = interval_label(spec);
  if (!has_dirichlet || spec.dirichlet_nodes == DirichletNodes::kEliminated) {
    return generator_from_system(sys, std::move(label), tol);
  }

  const FemSystem full = natural_system(spec);
  const Eigen::Index n_full = full.mass.size();
  Matrix embedding = Matrix::Zero(n_full, sys.mass.size());
  for (Eigen::Index j = 0; j < sys.mass.size(); ++j) embedding(j + 1, j) = 1.0;
  Generator g = lift_to_ambient(generator_from_system(sys, label, tol), embedding,
                                WeightVector(full.mass), 0.0, tol);
  g.label = label + ":killed";
  return g;
}

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kAdjacency: return "adjacency";
    case GraphKind::kLaplacian: return "laplacian";
    case GraphKind::kAdvection: return "advection";
  }
  return "unknown";
}

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "adjacency") return GraphKind::kAdjacency;
  if (name == "laplacian") return GraphKind::kLaplacian;
  if (name == "advection") return GraphKind::kAdvection;
  throw Error(ErrorCode::kInvalidArgument, "unknown graph kind '" + std::string(name) +
                                               "' (adjacency|laplacian|advection)");
}

void validate_graph(const GraphSpec& spec) {
  if (spec.vertex_count < 1) throw Error(ErrorCode::kInvalidArgument, "graph has no vertices");
  for (const auto& [i, j] : spec.edges) {
    if (i < 0 || j < 0 || i >= spec.vertex_count || j >= spec.vertex_count) {
      throw Error(ErrorCode::kInvalidArgument, "edge (" + std::to_string(i) + "," +
                                                   std::to_string(j) + ") is out of range");
    }
    if (i == j) {
      throw Error(ErrorCode::kInvalidArgument, "self-loop at vertex " + std::to_string(i));
    }
  }
  if (spec.kind == GraphKind::kAdvection && !spec.directed) {
    throw Error(ErrorCode::kInvalidArgument, "advection matrices need directed arcs");
  }
  if (spec.kind == GraphKind::kLaplacian && spec.directed) {
    throw Error(ErrorCode::kInvalidArgument,
                "the graph Laplacian is for undirected graphs; use advection for digraphs");
  }
}

namespace {

std::vector<std::vector<int>> neighbours(const GraphSpec& spec, bool follow_orientation) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(spec.vertex_count));
  for (const auto& [i, j] : spec.edges) {
    adj[static_cast<std::size_t>(i)].push_back(j);
    if (!follow_orientation || !spec.directed) adj[static_cast<std::size_t>(j)].push_back(i);
  }
  return adj;
}

std::size_t reach_count(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count;
}

}  // namespace

bool is_connected(const GraphSpec& spec) {
  if (spec.vertex_count <= 1) return true;
  return reach_count(neighbours(spec, false), 0) == static_cast<std::size_t>(spec.vertex_count);
}

bool is_strongly_connected(const GraphSpec& spec) {
  if (!spec.directed) return is_connected(spec);
  const auto fwd = neighbours(spec, true);
  std::vector<std::vector<int>> bwd(fwd.size());
  for (std::size_t v = 0; v < fwd.size(); ++v) {
    for (int w : fwd[v]) bwd[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
  }
  const auto total = static_cast<std::size_t>(spec.vertex_count);
  return reach_count(fwd, 0) == total && reach_count(bwd, 0) == total;
}

Generator assemble_graph(const GraphSpec& spec, const Tolerances& tol) {
  validate_graph(spec);
  const int v = spec.vertex_count;
  Matrix adj = Matrix::Zero(v, v);
  for (const auto& [i, j] : spec.edges) {
    adj(i, j) = 1.0;
    if (!spec.directed) adj(j, i) = 1.0;
  }
  const std::string label = "graph:" + std::string(to_string(spec.kind));
  switch (spec.kind) {
    case GraphKind::kAdjacency: {
      std::optional<WeightVector> w;
      if (!spec.directed) w = WeightVector::ones(v);
      return Generator::make(adj, std::move(w), label, tol);
    }
    case GraphKind::kLaplacian: {
      Matrix gen = adj;
      gen.diagonal() = -adj.rowwise().sum();
      return Generator::make(std::move(gen), WeightVector::ones(v), label, tol);
    }
    case GraphKind::kAdvection: {
      Matrix gen = adj;
      gen.diagonal() = -adj.rowwise().sum();
      Generator g = Generator::make(std::move(gen), std::nullopt, label, tol);
      if (!is_strongly_connected(spec)) g.warnings.emplace_back("NotStronglyConnected");
      return g;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unhandled graph kind");
}

Generator assemble_metric_graph(const MetricGraphSpec& spec, const Tolerances& tol) {
  GraphSpec graph = spec.graph;
  graph.kind = GraphKind::kLaplacian;
  if (graph.directed) {
    throw Error(ErrorCode::kInvalidArgument, "metric graphs are built on undirected graphs");
  }
  validate_graph(graph);
  if (graph.edges.empty()) throw Error(ErrorCode::kInvalidArgument, "metric graph has no edges");
  if (spec.edge_lengths.size() != graph.edges.size()) {
    throw Error(ErrorCode::kInvalidArgument, "need one length per edge");
  }
  if (spec.cells_per_edge < 1) throw Error(ErrorCode::kInvalidArgument, "cells_per_edge < 1");
  for (double len : spec.edge_lengths) {
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw Error(ErrorCode::kInvalidArgument, "edge lengths must be positive");
    }
  }
  if (!is_connected(graph)) throw Error(ErrorCode::kDisconnected, "metric graph is not connected");

  const int v = graph.vertex_count;
  const int cells = spec.cells_per_edge;
  const Eigen::Index dofs =
      v + static_cast<Eigen::Index>(graph.edges.size()) * (cells - 1);
  Matrix k = Matrix::Zero(dofs, dofs);
  Vector m = Vector::Zero(dofs);

  Eigen::Index next = v;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto [from, to] = graph.edges[e];
    const double h = spec.edge_lengths[e] / cells;
    Eigen::Index prev = from;
    for (int c = 0; c < cells; ++c) {
      const Eigen::Index cur = (c == cells - 1) ? Eigen::Index{to} : next++;
      k(prev, prev) += 1.0 / h;
      k(cur, cur) += 1.0 / h;
      k(prev, cur) -= 1.0 / h;
      k(cur, prev) -= 1.0 / h;
      m[prev] += h / 2;
      m[cur] += h / 2;
      prev = cur;
    }
  }

  Matrix a = -(m.cwiseInverse().asDiagonal() * k);
  Generator g = Generator::make(std::move(a), WeightVector(m), "metric-graph", tol);
  g.vertex_dofs.resize(static_cast<std::size_t>(v));
  std::iota(g.vertex_dofs.begin(), g.vertex_dofs.end(), Eigen::Index{0});
  return g;
}

Matrix identification_embedding(Eigen::Index original_dim, Eigen::Index v1, Eigen::Index v2) {
  const Eigen::Index keep = std::min(v1, v2);
  const Eigen::Index drop = std::max(v1, v2);
  Matrix e = Matrix::Zero(original_dim, original_dim - 1);
  for (Eigen::Index i = 0; i < original_dim; ++i) {
    const Eigen::Index col = i == drop ? keep : (i > drop ? i - 1 : i);
    e(i, col) = 1.0;
  }
  return e;
}

Generator identify_vertices(const Generator& g, Eigen::Index v1, Eigen::Index v2,
                            const Tolerances& tol) {
  const auto is_vertex = [&](Eigen::Index v) {
    return std::find(g.vertex_dofs.begin(), g.vertex_dofs.end(), v) != g.vertex_dofs.end();
  };
  if (v1 == v2 || !is_vertex(v1) || !is_vertex(v2) || !g.weight) {
    throw Error(ErrorCode::kNotVertexDof, "identify_vertices needs two distinct vertex dofs");
  }
  const Vector& m = g.weight->values();
  const Matrix k = -(m.asDiagonal() * g.matrix);
  const Matrix e = identification_embedding(g.dim(), v1, v2);
  const Matrix k_merged = e.transpose() * k * e;
  const Vector m_merged = e.transpose() * m;

  Matrix a = -(m_merged.cwiseInverse().asDiagonal() * k_merged);
  Generator out = Generator::make(std::move(a), WeightVector(m_merged),
                                  g.label + ":identify=" + std::to_string(v1) + "," +
                                      std::to_string(v2),
                                  tol);
  const Eigen::Index drop = std::max(v1, v2);
  for (Eigen::Index v : g.vertex_dofs) {
    if (v == drop) continue;
    out.vertex_dofs.push_back(v > drop ? v - 1 : v);
  }
  return out;
}

Generator lift_to_ambient(const Generator& sub, const Matrix& embedding,
                          const WeightVector& ambient_weight, double rate,
                          const Tolerances& tol) {
  if (embedding.cols() != sub.dim() || embedding.rows() != ambient_weight.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding shape does not match the spaces");
  }
  const Matrix gram = embedding.transpose() * ambient_weight.values().asDiagonal() * embedding;
  const Vector induced = gram.diagonal();
  if (!sub.weight || max_abs(gram - Matrix(induced.asDiagonal())) > 1e-12 * induced.maxCoeff() ||
      (sub.weight->values() - induced).cwiseAbs().maxCoeff() > 1e-12 * induced.maxCoeff()) {
    throw Error(ErrorCode::kInvalidArgument,
                "subspace generator weight must equal E^T W E (diagonal)");
  }
  const Matrix projection =
      induced.cwiseInverse().asDiagonal() * embedding.transpose() *
      ambient_weight.values().asDiagonal();
  const Matrix ep = embedding * projection;
  const Matrix lifted = embedding * sub.matrix * projection;
  if (rate <= 0.0) {
    rate = 2.0 * lifted.diagonal().cwiseAbs().maxCoeff();
    if (rate <= 0.0) rate = 1.0;
  }
  const Eigen::Index n = ambient_weight.size();
  Matrix a = lifted - rate * (Matrix::Identity(n, n) - ep);
  Generator g = Generator::make(std::move(a), ambient_weight, sub.label + ":lifted", tol);
  return g;
}

Generator square_generator(const Generator& g, const Tolerances& tol) {
  if (!g.self_adjoint) {
    throw Error(ErrorCode::kNotSelfAdjoint, "square_generator needs a self-adjoint generator");
  }
  Matrix sq = -(g.matrix * g.matrix);
  Generator out = Generator::make(std::move(sq), g.weight, "square(" + g.label + ")", tol);
  return out;
}

Generator scale_generator(const Generator& g, double c, const Tolerances& tol) {
  if (!std::isfinite(c)) throw Error(ErrorCode::kInvalidArgument, "scale factor is not finite");
  Generator out = Generator::make(c * g.matrix, g.weight, g.label, tol);
  if (c != 1.0) out.label = "scale(" + g.label + "," + std::to_string(c) + ")";
  out.vertex_dofs = g.vertex_dofs;
  out.warnings = g.warnings;
  return out;
}

Generator shift_generator(const Generator& g, double alpha, const Tolerances& tol) {
  if (!std::isfinite(alpha)) throw Error(ErrorCode::kInvalidArgument, "shift is not finite");
  Matrix a = g.matrix;
  a.diagonal().array() += alpha;
  Generator out = Generator::make(std::move(a), g.weight, g.label, tol);
  if (alpha != 0.0) out.label = "shift(" + g.label + "," + std::to_string(alpha) + ")";
  out.vertex_dofs = g.vertex_dofs;
  out.warnings = g.warnings;
  return out;
}

namespace {

std::optional<Vector> positive_ground_state(const Generator& g, const Tolerances& tol) {
  if (!g.self_adjoint || !g.weight) return std::nullopt;
  Vector v = eig_weighted_symmetric(g.matrix, *g.weight, tol).vectors.col(0);
  if (v.sum() < 0.0) v = -v;
  v /= v.cwiseAbs().maxCoeff();
  if (v.minCoeff() < -tol.pos) return std::nullopt;
  return v;
}

}  // namespace

std::optional<double> ground_state_ratio(const Generator& a_hat, const Generator& a,
                                         const Tolerances& tol) {
  if (a_hat.dim() != a.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "ground_state_ratio: dimensions differ");
  }
  const auto uh = positive_ground_state(a_hat, tol);
  const auto u = positive_ground_state(a, tol);
  if (!uh || !u) return std::nullopt;
  double c = 0.0;
  for (Eigen::Index i = 0; i < u->size(); ++i) {
    const bool hat_zero = (*uh)[i] <= tol.pos;
    if ((*u)[i] <= tol.pos) continue;
    if (hat_zero) return std::nullopt;
    c = std::max(c, (*u)[i] / (*uh)[i]);
  }
  return c;
}

}  // namespace evdom
