#include "evdom/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "evdom/errors.hpp"
#include "evdom/matrix_io.hpp"

namespace evdom {
namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> fields;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream fields(raw);
    Line line{number, {}};
    std::string f;
    while (fields >> f) line.fields.push_back(f);
    if (line.fields.empty() || line.fields.front().front() == '#') continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::kParse, source + ":" + std::to_string(line) + ": " + msg);
}

long long to_int(const std::string& s, const std::string& source, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(source, line, "expected an integer, got '" + s + "'");
  }
  return v;
}

double to_double(const std::string& s, const std::string& source, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    fail(source, line, "expected a number, got '" + s + "'");
  }
  return v;
}

GraphSpec parse_common(const std::vector<Line>& lines, const std::string& source,
                       std::size_t edge_fields, std::vector<double>* lengths) {
  if (lines.empty()) fail(source, 1, "missing header \"V E directed|undirected\"");
  const Line& head = lines.front();
  if (head.fields.size() != 3) fail(source, head.number, "header needs 3 fields");
  GraphSpec spec;
  spec.vertex_count = static_cast<int>(to_int(head.fields[0], source, head.number));
  const long long edges = to_int(head.fields[1], source, head.number);
  if (spec.vertex_count < 1 || edges < 0) fail(source, head.number, "bad counts");
  if (head.fields[2] == "directed") {
    spec.directed = true;
  } else if (head.fields[2] != "undirected") {
    fail(source, head.number, "expected 'directed' or 'undirected'");
  }
  if (lines.size() - 1 != static_cast<std::size_t>(edges)) {
    fail(source, lines.back().number,
         "header announces " + std::to_string(edges) + " edges, found " +
             std::to_string(lines.size() - 1));
  }
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& l = lines[k];
    if (l.fields.size() != edge_fields) {
      fail(source, l.number, "edge line needs " + std::to_string(edge_fields) + " fields");
    }
    const auto i = to_int(l.fields[0], source, l.number);
    const auto j = to_int(l.fields[1], source, l.number);
    if (i < 0 || j < 0 || i >= spec.vertex_count || j >= spec.vertex_count) {
      fail(source, l.number, "vertex index out of range");
    }
    spec.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    if (lengths) {
      const double len = to_double(l.fields[2], source, l.number);
      if (!(len > 0.0)) fail(source, l.number, "edge length must be positive");
      lengths->push_back(len);
    }
  }
  return spec;
}

}  // namespace

GraphSpec parse_graph(const std::string& text, const std::string& source) {
  return parse_common(split_lines(text), source, 2, nullptr);
}

MetricGraphSpec parse_metric_graph(const std::string& text, const std::string& source) {
  MetricGraphSpec spec;
  spec.graph = parse_common(split_lines(text), source, 3, &spec.edge_lengths);
  return spec;
}

GraphSpec read_graph_file(const std::string& path) {
  return parse_graph(read_text_file(path), path);
}

MetricGraphSpec read_metric_graph_file(const std::string& path) {
  return parse_metric_graph(read_text_file(path), path);
}

}  // namespace evdom
