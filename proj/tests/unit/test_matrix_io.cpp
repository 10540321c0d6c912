#include <filesystem>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "evdom/graph_io.hpp"
#include "evdom/matrix_io.hpp"
#include "test_util.hpp"

namespace evdom {
namespace {

TEST(MatrixIo, ParsesSimpleMatrix) {
  const Matrix a = parse_matrix("2\n1 -2.5\n3e-1 4\n");
  Matrix expected(2, 2);
  expected << 1, -2.5, 0.3, 4;
  EXPECT_EQ(a, expected);
}

TEST(MatrixIo, ReportsLineAndColumn) {
  try {
    parse_matrix("2\n1 2\n3 x\n", "m.txt");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("m.txt:3:3"), std::string::npos) << e.what();
  }
}

TEST(MatrixIo, RejectsShortAndLongInput) {
  EXPECT_EVDOM_ERROR(parse_matrix("2\n1 2\n3\n"), ErrorCode::kParse);
  EXPECT_EVDOM_ERROR(parse_matrix("1\n1 2\n"), ErrorCode::kParse);
  EXPECT_EVDOM_ERROR(parse_matrix("0\n"), ErrorCode::kParse);
  EXPECT_EVDOM_ERROR(parse_matrix("1\nnan\n"), ErrorCode::kParse);
}

TEST(MatrixIo, VectorAnyLayout) {
  const Vector v = parse_vector("3 1\n2 3");
  EXPECT_EQ(v, Vector::LinSpaced(3, 1, 3));
}

TEST(MatrixIo, RoundTripIsBitExact) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> d(0.0, 1e3);
  Matrix a(5, 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) a(i, j) = d(rng) * std::pow(10.0, (i * 5 + j) % 17 - 8);
  }
  std::ostringstream out;
  write_matrix(out, a);
  EXPECT_EQ(parse_matrix(out.str()), a);

  const Vector v = a.col(2);
  std::ostringstream vout;
  write_vector(vout, v);
  EXPECT_EQ(parse_vector(vout.str()), v);
}

TEST(MatrixIo, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "evdom_matrix_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "m.txt").string();
  Matrix a(2, 2);
  a << 0.1, 0.2, 1.0 / 3.0, -7;
  write_matrix_file(path, a);
  EXPECT_EQ(read_matrix_file(path), a);
  EXPECT_EVDOM_ERROR(read_matrix_file((dir / "missing.txt").string()), ErrorCode::kIo);
  std::filesystem::remove_all(dir);
}

TEST(GraphIo, ParsesUndirectedWithComments) {
  const GraphSpec g = parse_graph("# path\n3 2 undirected\n0 1\n\n1 2\n");
  EXPECT_EQ(g.vertex_count, 3);
  EXPECT_FALSE(g.directed);
  ASSERT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(g.edges[1], std::make_pair(1, 2));
}

TEST(GraphIo, ParsesMetricGraph) {
  const MetricGraphSpec m = parse_metric_graph("4 3 undirected\n0 1 1\n0 2 0.5\n0 3 2\n");
  ASSERT_EQ(m.edge_lengths.size(), 3u);
  EXPECT_DOUBLE_EQ(m.edge_lengths[1], 0.5);
}

TEST(GraphIo, Errors) {
  EXPECT_EVDOM_ERROR(parse_graph("3 2 sideways\n0 1\n1 2\n"), ErrorCode::kParse);
  EXPECT_EVDOM_ERROR(parse_graph("3 2 undirected\n0 1\n"), ErrorCode::kParse);
  EXPECT_EVDOM_ERROR(parse_graph("3 1 undirected\n0 5\n"), ErrorCode::kParse);
  EXPECT_EVDOM_ERROR(parse_metric_graph("2 1 undirected\n0 1 -1\n"), ErrorCode::kParse);
}

}  // namespace
}  // namespace evdom
