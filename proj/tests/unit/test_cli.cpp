#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "report_json.hpp"
#include "evdom/matrix_io.hpp"
#include "resolve.hpp"
#include "test_util.hpp"

namespace evdom::cli {
namespace {

using json = nlohmann::ordered_json;

const std::string kData = EVDOM_TEST_DATA;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "evdom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("evdom_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

TEST(Dump17, FullPrecisionAndValidJson) {
  json j;
  j["third"] = 1.0 / 3.0;
  j["tiny"] = 1e-300;
  j["nan"] = std::nan("");
  j["list"] = json::array({0.1, 2, "x", true, nullptr});
  j["empty"] = json::object();
  const std::string s = dump17(j);
  EXPECT_NE(s.find("0.33333333333333331"), std::string::npos);
  EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
  const json back = json::parse(s);
  EXPECT_EQ(back["third"].get<double>(), 1.0 / 3.0);
  EXPECT_EQ(back["tiny"].get<double>(), 1e-300);
  EXPECT_TRUE(back["nan"].is_null());
  EXPECT_EQ(back["list"][1].get<int>(), 2);
  EXPECT_TRUE(back["empty"].is_object());
  EXPECT_EQ(dump17(json::array({1.5, 2.5}), -1), "[1.5,2.5]");
}

TEST(CliDecide, MixedVersusPeriodic) {
  const CliRun r = run({"decide", "--a", "interval:mixed:200", "--b", "interval:periodic:200"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["kind"], "EventuallyDominates");
  EXPECT_TRUE(j.contains("certified_t1"));
  EXPECT_TRUE(j.contains("certified_delta"));
  EXPECT_TRUE(j.contains("empirical_t1"));
  EXPECT_FALSE(j.contains("witness"));
  EXPECT_TRUE(j.contains("hypotheses"));
}

TEST(CliDecide, ProjectionFixtures) {
  const CliRun r = run({"decide", "--a", "fixture:ex34A", "--b", "fixture:ex34B"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["kind"], "NeverEventuallyDominates");
  ASSERT_TRUE(j.contains("witness"));
  EXPECT_EQ(j["witness"]["x"].size(), 2u);
  EXPECT_TRUE(j["witness"]["t"].is_number());
}

TEST(CliDecide, SameFileIsIdentical) {
  const std::string m = kData + "/metzler3.txt";
  const CliRun r = run({"decide", "--a", m, "--b", m});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["kind"], "Identical");
}

TEST(CliDecide, KeyOrderIsStable) {
  const CliRun r = run({"decide", "--a", "fixture:ex34A", "--b", "fixture:ex34B"});
  const json j = json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expected{"kind", "spb_a", "spb_b", "witness", "hypotheses"};
  EXPECT_EQ(keys, expected);
}

TEST(CliDecide, HypothesesNotVerifiedExitsTwo) {
  const CliRun r = run({"decide", "--a", "fixture:neumann-pi", "--b", "fixture:dirichlet-plus2-pi"});
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_EQ(json::parse(r.out)["kind"], "HypothesesNotVerified");
}

TEST(CliDecide, Errors) {
  EXPECT_EQ(run({"decide", "--a", "fixture:ex34A"}).code, 1);
  EXPECT_EQ(run({"decide", "--a", "fixture:ex34A", "--b", "fixture:ex35A"}).code, 1);
  const CliRun bad = run({"decide", "--a", kData + "/bad_matrix.txt", "--b", "fixture:ex34A"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("bad_matrix.txt:3:3"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"decide", "--a", "nonsense:1", "--b", "fixture:ex34A"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliDecide, DeterministicOutput) {
  const std::vector<std::string> args{"decide", "--a", "fixture:ex35A", "--b", "fixture:ex35B",
                                      "--seed", "7"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(CliCertify, DirichletVersusNonLocal) {
  const CliRun r = run({"certify", "--a", "interval:dirichlet:100", "--b", "interval:nonlocal:100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(std::isfinite(j["t1"].get<double>()));
  ASSERT_EQ(j["verification"].size(), 3u);
  for (const auto& v : j["verification"]) EXPECT_GE(v["margin"].get<double>(), 0.0);
}

TEST(CliCertify, OneByOne) {
  const CliRun r = run({"certify", "--a", "fixture:diag-minus2", "--b", "fixture:diag-minus1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["t1"].get<double>(), std::log(2.0), 1e-9);
}

TEST(CliCertify, WrongOrderFails) {
  const CliRun r = run({"certify", "--a", "fixture:diag-minus1", "--b", "fixture:diag-minus2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("SpectralOrderViolated"), std::string::npos) << r.err;
}

TEST(CliCertify, PaperFaithfulFlag) {
  const CliRun tight = run({"certify", "--a", "interval:mixed:40", "--b", "interval:periodic:40"});
  const CliRun loose = run({"--paper-faithful", "certify", "--a", "interval:mixed:40", "--b",
                         "interval:periodic:40"});
  ASSERT_EQ(tight.code, 0);
  ASSERT_EQ(loose.code, 0);
  const json jt = json::parse(tight.out);
  const json jl = json::parse(loose.out);
  EXPECT_FALSE(jt["paper_faithful"].get<bool>());
  EXPECT_TRUE(jl["paper_faithful"].get<bool>());
  EXPECT_GE(jl["t1"].get<double>(), jt["t1"].get<double>());
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(CliSimulate, MixedVersusPeriodicCrossesOnce) {
  const CliRun r = run({"simulate", "--a", "interval:mixed:50", "--b", "interval:periodic:50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_GT(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "min_entry", "crossed"}));
  int flips = 0;
  for (std::size_t k = 2; k < rows.size(); ++k) flips += rows[k][2] != rows[k - 1][2];
  EXPECT_EQ(flips, 1);
  EXPECT_EQ(rows.back()[2], "1");
}

TEST(CliSimulate, RotatingPairNeverCrosses) {
  const CliRun r = run({"--grid", "0:25.132741228718345:200", "simulate", "--a", "fixture:ex35A",
                     "--b", "fixture:ex35B"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 201u);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_EQ(rows[k][2], "0");
}

TEST(CliSimulate, IdenticalIsZeroAndJsonGoesToOut) {
  TempDir dir;
  const std::string report = dir.file("sim.json");
  const CliRun r = run({"--out", report, "simulate", "--a", "fixture:ex35B", "--b", "fixture:ex35B"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (std::size_t k = 1; k < csv_rows(r.out).size(); ++k) {
    EXPECT_LE(std::abs(std::stod(csv_rows(r.out)[k][1])), 1e-12);
  }
  std::ifstream in(report);
  const json j = json::parse(in);
  EXPECT_TRUE(j.contains("grid"));
}

TEST(CliSimulate, CsvFileMovesJsonToStdout) {
  TempDir dir;
  const std::string csv = dir.file("sim.csv");
  const CliRun r = run({"simulate", "--a", "interval:mixed:40", "--b", "interval:periodic:40", "--csv", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out).contains("crossover"));
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,min_entry,crossed");
}

TEST(CliDecide, ReportsGroundStateRatio) {
  const CliRun r = run({"decide", "--a", "interval:dirichlet:50", "--b", "interval:dirichlet:50@scale=0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("ground-state ratio c = "), std::string::npos) << r.err;
}

TEST(CliOrbit, ProjectionPair) {
  const CliRun r = run({"--grid", "0:50:200", "orbit", "--a", "fixture:ex34A", "--b", "fixture:ex34B",
                     "--x", "0,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["kind"], "ADominatesEverywhere");
  EXPECT_EQ(run({"orbit", "--a", "fixture:ex34A", "--b", "fixture:ex34B", "--x", "-1,1"}).code, 1);
}

TEST(CliAssemble, GraphLaplacianHasZeroRowSums) {
  TempDir dir;
  const CliRun r = run({"--out", dir.file("l.txt"), "assemble", "graph", "--edges",
                     kData + "/path5.txt", "--kind", "laplacian"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Matrix m = read_matrix_file(dir.file("l.txt"));
  EXPECT_EQ((m * Vector::Ones(5)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(CliAssemble, NonLocalIntervalRoundTrip) {
  TempDir dir;
  const std::string path = dir.file("nl.txt");
  const CliRun r = run({"--out", path, "assemble", "interval", "--bc", "nonlocal", "--n", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Matrix m = read_matrix_file(path);
  const Vector w = read_vector_file(path + ".weight");
  const Generator direct = resolve_operator("interval:nonlocal:50");
  EXPECT_EQ(m, direct.matrix);
  EXPECT_EQ(w, direct.weight->values());
  const Matrix wa = w.asDiagonal() * m;
  EXPECT_LE(max_abs(wa - wa.transpose()), 1e-12);
  // W A = -K and the boundary term puts +1 in the corners of K
  EXPECT_NEAR(wa(0, 50), -1.0, 1e-12);

  const Generator reread = resolve_operator("file:" + path + ":" + path + ".weight");
  EXPECT_TRUE(reread.self_adjoint);
  EXPECT_EQ(reread.matrix, direct.matrix);
}

TEST(CliAssemble, MetricGraphIdentifyDropsOneDof) {
  TempDir dir;
  const CliRun full = run({"--out", dir.file("g.txt"), "assemble", "metric-graph", "--file",
                        kData + "/star.txt", "--cells", "20"});
  const CliRun merged = run({"--out", dir.file("h.txt"), "assemble", "metric-graph", "--file",
                          kData + "/star.txt", "--cells", "20", "--identify", "1,2"});
  ASSERT_EQ(full.code, 0) << full.err;
  ASSERT_EQ(merged.code, 0) << merged.err;
  EXPECT_EQ(read_matrix_file(dir.file("h.txt")).rows() + 1, read_matrix_file(dir.file("g.txt")).rows());
}

TEST(CliAssemble, AdvectionWarnsWhenNotStronglyConnected) {
  const CliRun r = run({"assemble", "graph", "--edges", kData + "/path3_directed.txt", "--kind",
                     "advection"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("NotStronglyConnected"), std::string::npos) << r.err;
  EXPECT_EQ(run({"assemble", "graph", "--edges", kData + "/path5.txt", "--kind", "advection"}).code, 1);
  const CliRun ok = run({"assemble", "graph", "--edges", kData + "/cycle3_directed.txt", "--kind",
                      "advection"});
  EXPECT_EQ(ok.code, 0) << ok.err;
}

TEST(CliResolve, SpecForms) {
  EXPECT_EQ(resolve_operator("interval:dirichlet:10").dim(), 9);
  EXPECT_EQ(resolve_operator("interval:dirichlet:10@killed").dim(), 11);
  EXPECT_EQ(resolve_operator("graph:" + kData + "/cycle5.txt:laplacian").dim(), 5);
  EXPECT_EQ(resolve_operator("metric:" + kData + "/star.txt:4").dim(), 13);
  EXPECT_EQ(resolve_operator("metric:" + kData + "/star.txt:4:identify=1,2").dim(), 13);
  const Generator sq = resolve_operator("fixture:diag-minus2@scale=0.5@square");
  EXPECT_DOUBLE_EQ(sq.matrix(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(resolve_operator("fixture:diag-minus1@shift=3").matrix(0, 0), 2.0);
  EXPECT_EVDOM_ERROR(resolve_operator("interval:sideways:10"), ErrorCode::kInvalidArgument);
}

TEST(CliResolve, PairKillsDirichletNodesOnMismatch) {
  const auto [a, b] = resolve_pair("interval:dirichlet:20", "interval:nonlocal:20");
  EXPECT_EQ(a.dim(), b.dim());
}

TEST(CliGraphs, DistinctLaplaciansNeverDominate) {
  const std::string p = "graph:" + kData + "/path5.txt:laplacian";
  const std::string c = "graph:" + kData + "/cycle5.txt:laplacian";
  for (const auto& [x, y] : {std::pair{p, c}, std::pair{c, p}}) {
    const CliRun r = run({"decide", "--a", x, "--b", y});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["kind"], "NeverEventuallyDominates");
  }
  const CliRun adj = run({"decide", "--a", "graph:" + kData + "/path5.txt:adjacency", "--b",
                       "graph:" + kData + "/cycle5.txt:adjacency"});
  ASSERT_EQ(adj.code, 0) << adj.err;
  EXPECT_EQ(json::parse(adj.out)["kind"], "DominatesForAllT");
}

}  // namespace
}  // namespace evdom::cli
