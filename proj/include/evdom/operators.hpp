#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evdom/semigroup.hpp"

namespace evdom {

enum class BoundaryCondition {
  kDirichlet,
  kNeumann,
  kMixedDN,        // Dirichlet at 0, Neumann at the right end
  kPeriodic,
  kNonLocalRobin,  // u'(0) = -u'(1) = u(0) + u(1)
};

std::string_view to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(std::string_view name);

/// How Dirichlet endpoints enter the degree-of-freedom set.
enum class DirichletNodes {
  kEliminated,  // boundary nodes are not degrees of freedom
  kKilled,      // boundary nodes kept, decoupled, and decaying at a large rate
};

/// P1 finite elements with lumped mass on a uniform mesh of (0, length).
struct IntervalSpec {
  int n = 0;  // number of cells
  BoundaryCondition bc = BoundaryCondition::kNeumann;
  double length = 1.0;
  std::vector<double> coeff;  // per-cell diffusion coefficient; empty means 1
  DirichletNodes dirichlet_nodes = DirichletNodes::kEliminated;
};

/// Generator -m^{-1} K with weight m. Node positions of the degrees of
/// freedom are returned by interval_nodes(). For periodic conditions the
/// degrees of freedom sit at x_1..x_n with x_n identified with x_0.
Generator assemble_interval(const IntervalSpec& spec, const Tolerances& tol = {});
std::vector<double> interval_nodes(const IntervalSpec& spec);

/// Stiffness K and lumped mass m (diagonal) before forming the generator.
struct FemSystem {
  Matrix stiffness;
  Vector mass;
};
FemSystem assemble_interval_system(const IntervalSpec& spec, const Tolerances& tol = {});

enum class GraphKind { kAdjacency, kLaplacian, kAdvection };

std::string_view to_string(GraphKind kind);
GraphKind parse_graph_kind(std::string_view name);

struct GraphSpec {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // arcs i -> j when directed
  bool directed = false;
  GraphKind kind = GraphKind::kLaplacian;
};

void validate_graph(const GraphSpec& spec);
bool is_connected(const GraphSpec& spec);           // ignores orientation
bool is_strongly_connected(const GraphSpec& spec);  // undirected graphs: is_connected

/// Adjacency: Adj. Laplacian: -(D - Adj). Advection: -(D_out - Adj_arcs), whose
/// rows sum to zero; a warning is recorded when the digraph is not strongly
/// connected.
Generator assemble_graph(const GraphSpec& spec, const Tolerances& tol = {});

struct MetricGraphSpec {
  GraphSpec graph;  // undirected
  std::vector<double> edge_lengths;
  int cells_per_edge = 1;
};

/// Continuous P1 elements on every edge; graph vertices are shared degrees of
/// freedom 0..V-1 (recorded in Generator::vertex_dofs), interior edge nodes
/// follow edge by edge. Kirchhoff conditions are natural for this form.
Generator assemble_metric_graph(const MetricGraphSpec& spec, const Tolerances& tol = {});

/// Merges two vertex degrees of freedom (stiffness rows/columns and masses are
/// summed). The result has one fewer degree of freedom.
Generator identify_vertices(const Generator& g, Eigen::Index v1, Eigen::Index v2,
                            const Tolerances& tol = {});

/// The isometric embedding E of the merged space into the original one
/// (columns indexed by merged degrees of freedom).
Matrix identification_embedding(Eigen::Index original_dim, Eigen::Index v1,
                                Eigen::Index v2);

/// Lifts a generator acting on a subspace range(E) of a larger weighted space
/// to the whole space: E A P - rate (I - E P), where P is the w-orthogonal
/// projection onto range(E). The complement decays at `rate`. `sub` must be
/// self-adjoint for E^T W E. A rate <= 0 picks twice the largest diagonal
/// magnitude of E A P.
Generator lift_to_ambient(const Generator& sub, const Matrix& embedding,
                          const WeightVector& ambient_weight, double rate = 0.0,
                          const Tolerances& tol = {});

/// -A^2 with the same weight; requires a self-adjoint generator.
Generator square_generator(const Generator& g, const Tolerances& tol = {});

/// c * A with the same weight.
Generator scale_generator(const Generator& g, double c, const Tolerances& tol = {});

/// A + alpha * I with the same weight.
Generator shift_generator(const Generator& g, double alpha, const Tolerances& tol = {});

/// Smallest c with c * ground(a_hat) >= ground(a), both ground states scaled
/// to max entry 1. Entries where both vanish (killed nodes) are skipped.
/// Empty when either generator is not self-adjoint, a ground state changes
/// sign, or ground(a) is positive where ground(a_hat) vanishes.
std::optional<double> ground_state_ratio(const Generator& a_hat, const Generator& a,
                                         const Tolerances& tol = {});

}  // namespace evdom
