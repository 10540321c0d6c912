#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "evdom/errors.hpp"
#include "evdom/graph_io.hpp"
#include "evdom/matrix_io.hpp"
#include "evdom/operators.hpp"
#include "report_json.hpp"
#include "resolve.hpp"

namespace evdom::cli {
namespace {

struct Config {
  double tol_pos = -1.0;
  double tol_gap = -1.0;
  std::string grid;
  std::uint64_t seed = 42;
  std::string out;
  bool paper_faithful = false;
  std::string u = "ones";
  std::string a;
  std::string b;
};

struct AssembleConfig {
  std::string spec;
  std::string bc = "neumann";
  int n = 0;
  std::string length = "1";
  std::string coeff;
  bool killed = false;
  std::string edges;
  std::string kind = "laplacian";
  std::string file;
  int cells = 1;
  std::string identify;
  std::string weight_out;
};

Tolerances tolerances(const Config& cfg) {
  Tolerances tol;
  if (cfg.tol_pos >= 0.0) tol.pos = cfg.tol_pos;
  if (cfg.tol_gap >= 0.0) tol.gap = cfg.tol_gap;
  return tol;
}

GridSpec grid(const Config& cfg) {
  return cfg.grid.empty() ? GridSpec{} : GridSpec::parse(cfg.grid);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  f << text;
}

std::string dump(const Json& j) { return dump17(j) + "\n"; }

int cmd_decide(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Tolerances tol = tolerances(cfg);
  const auto [a, b] = resolve_pair(cfg.a, cfg.b, tol);
  const ComparisonVector u = resolve_comparison(cfg.u, a, b, tol);
  DecideOptions opts;
  opts.grid = grid(cfg);
  opts.seed = cfg.seed;
  opts.paper_faithful = cfg.paper_faithful;
  const DominationVerdict v = decide_eventual_domination(a, b, u, opts, tol);
  for (const auto& w : a.warnings) err << "warning: A: " << w << '\n';
  for (const auto& w : b.warnings) err << "warning: B: " << w << '\n';
  for (const auto& note : v.notes) err << "note: " << note << '\n';
  if (const auto c = ground_state_ratio(b, a, tol)) {
    err << "note: ground-state ratio c = " << format_double(*c) << " (c * ground(B) >= ground(A))\n";
  }
  emit(dump(to_json(v)), cfg.out, out);
  return v.kind == VerdictKind::kHypothesesNotVerified ? 2 : 0;
}

int cmd_certify(const Config& cfg, std::ostream& out) {
  const Tolerances tol = tolerances(cfg);
  const auto [a, b] = resolve_pair(cfg.a, cfg.b, tol);
  const ComparisonVector u = resolve_comparison(cfg.u, a, b, tol);
  const CertifiedTimeReport r =
      certify_uniform_time(a, b, u, CertifyOptions{cfg.paper_faithful}, tol);
  const auto checks =
      verify_certificate(a, b, u, r, {r.t1, 1.5 * r.t1 + 1.0, 3.0 * r.t1 + 2.0}, tol);
  emit(dump(to_json(r, checks)), cfg.out, out);
  return 0;
}

int cmd_simulate(const Config& cfg, const std::string& csv_path, std::ostream& out) {
  const Tolerances tol = tolerances(cfg);
  const auto [a, b] = resolve_pair(cfg.a, cfg.b, tol);
  const EmpiricalReport r = empirical_crossover(a, b, grid(cfg), tol);
  std::ostringstream csv;
  csv << "t,min_entry,crossed\n";
  for (std::size_t k = 0; k < r.grid.size(); ++k) {
    const bool crossed = r.crossover && r.grid[k] >= *r.crossover;
    csv << format_double(r.grid[k]) << ',' << format_double(r.per_time_min_entry[k]) << ','
        << (crossed ? 1 : 0) << '\n';
  }
  emit(csv.str(), csv_path, out);
  // the JSON report goes to --out, or to stdout when the CSV went to a file
  if (!cfg.out.empty() || !csv_path.empty()) emit(dump(to_json(r)), cfg.out, out);
  return 0;
}

int cmd_orbit(const Config& cfg, const std::string& x_spec, std::ostream& out) {
  const Tolerances tol = tolerances(cfg);
  const auto [a, b] = resolve_pair(cfg.a, cfg.b, tol);
  const OrbitReport r = orbit_compare(a, b, resolve_vector(x_spec), grid(cfg), tol);
  emit(dump(to_json(r)), cfg.out, out);
  return 0;
}

int write_generator(const Generator& g, const Config& cfg, const AssembleConfig& ac,
                    std::ostream& out, std::ostream& err) {
  for (const auto& w : g.warnings) err << "warning: " << w << '\n';
  if (cfg.out.empty()) {
    write_matrix(out, g.matrix);
    if (g.weight) write_vector(out, g.weight->values());
    return 0;
  }
  write_matrix_file(cfg.out, g.matrix);
  if (g.weight) {
    write_vector_file(ac.weight_out.empty() ? cfg.out + ".weight" : ac.weight_out,
                      g.weight->values());
  }
  return 0;
}

std::pair<Eigen::Index, Eigen::Index> parse_pair(const std::string& text) {
  const Vector v = resolve_vector(text);
  if (v.size() != 2) throw Error(ErrorCode::kParse, "--identify needs v1,v2");
  return {static_cast<Eigen::Index>(v[0]), static_cast<Eigen::Index>(v[1])};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eventual domination of matrix semigroups", "evdom"};
  app.fallthrough();
  app.require_subcommand(1);
  Config cfg;
  AssembleConfig ac;
  std::string csv_path;
  std::string x_spec;

  app.add_option("--tol-pos", cfg.tol_pos, "eigenvector positivity tolerance (relative)");
  app.add_option("--tol-gap", cfg.tol_gap, "spectral gap tolerance coefficient");
  app.add_option("--grid", cfg.grid, "time grid tmin:tmax:points");
  app.add_option("--seed", cfg.seed, "seed for random witness vectors");
  app.add_option("--out", cfg.out, "output file (default: stdout)");
  app.add_flag("--paper-faithful", cfg.paper_faithful, "use the uniform M^2 series bound");
  app.add_option("--u", cfg.u, "comparison vector: ones | ground-a | ground-b | <file>");

  const auto pair_options = [&](CLI::App* sub) {
    sub->add_option("--a", cfg.a, "operator A")->required();
    sub->add_option("--b", cfg.b, "operator B")->required();
  };
  auto* decide = app.add_subcommand("decide", "does e^{tB} eventually dominate e^{tA}?");
  pair_options(decide);
  auto* certify = app.add_subcommand("certify", "certified uniform domination time");
  pair_options(certify);
  auto* simulate = app.add_subcommand("simulate", "min entry of e^{tB} - e^{tA} on a grid");
  pair_options(simulate);
  simulate->add_option("--csv", csv_path, "CSV output (default: stdout)");
  auto* orbit = app.add_subcommand("orbit", "compare the orbits of one vector");
  pair_options(orbit);
  orbit->add_option("--x", x_spec, "initial vector: v1,v2,... or a vector file")->required();

  auto* assemble = app.add_subcommand("assemble", "write a generator and its weight");
  assemble->add_option("--weight-out", ac.weight_out, "weight file (default: <out>.weight)");
  assemble->require_subcommand(1);
  auto* a_spec = assemble->add_subcommand("spec", "any operator spec");
  a_spec->add_option("spec", ac.spec)->required();
  auto* a_interval = assemble->add_subcommand("interval", "P1 Laplacian on an interval");
  a_interval->add_option("--bc", ac.bc, "dirichlet|neumann|mixed|periodic|nonlocal");
  a_interval->add_option("--n", ac.n, "number of cells")->required();
  a_interval->add_option("--length", ac.length, "interval length (number or pi)");
  a_interval->add_option("--coeff", ac.coeff, "per-cell coefficient vector file");
  a_interval->add_flag("--killed", ac.killed, "keep Dirichlet nodes as decaying dofs");
  auto* a_graph = assemble->add_subcommand("graph", "graph adjacency/Laplacian/advection");
  a_graph->add_option("--edges", ac.edges, "graph file")->required();
  a_graph->add_option("--kind", ac.kind, "adjacency|laplacian|advection");
  auto* a_metric = assemble->add_subcommand("metric-graph", "metric-graph Laplacian");
  a_metric->add_option("--file", ac.file, "metric graph file")->required();
  a_metric->add_option("--cells", ac.cells, "cells per edge");
  a_metric->add_option("--identify", ac.identify, "merge two vertices: v1,v2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*decide) return cmd_decide(cfg, out, err);
    if (*certify) return cmd_certify(cfg, out);
    if (*simulate) return cmd_simulate(cfg, csv_path, out);
    if (*orbit) return cmd_orbit(cfg, x_spec, out);
    const Tolerances tol = tolerances(cfg);
    if (*a_spec) return write_generator(resolve_operator(ac.spec, tol), cfg, ac, out, err);
    if (*a_interval) {
      std::string spec = "interval:" + ac.bc + ":" + std::to_string(ac.n) + ":" + ac.length;
      if (!ac.coeff.empty()) spec += ":coeff=" + ac.coeff;
      if (ac.killed) spec += "@killed";
      return write_generator(resolve_operator(spec, tol), cfg, ac, out, err);
    }
    if (*a_graph) {
      GraphSpec spec = read_graph_file(ac.edges);
      spec.kind = parse_graph_kind(ac.kind);
      return write_generator(assemble_graph(spec, tol), cfg, ac, out, err);
    }
    if (*a_metric) {
      MetricGraphSpec spec = read_metric_graph_file(ac.file);
      spec.cells_per_edge = ac.cells;
      Generator g = assemble_metric_graph(spec, tol);
      if (!ac.identify.empty()) {
        const auto [v1, v2] = parse_pair(ac.identify);
        g = identify_vertices(g, v1, v2, tol);
      }
      return write_generator(g, cfg, ac, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace evdom::cli
