#pragma once

#include <string>

#include "evdom/operators.hpp"

namespace evdom {

// Graph file: line 1 "V E directed|undirected", then E lines "i j" (0-indexed).
// Metric graph file: same header, edge lines "i j length".
// Blank lines and lines starting with '#' are skipped.

GraphSpec parse_graph(const std::string& text, const std::string& source = "<text>");
MetricGraphSpec parse_metric_graph(const std::string& text,
                                   const std::string& source = "<text>");

GraphSpec read_graph_file(const std::string& path);
MetricGraphSpec read_metric_graph_file(const std::string& path);

}  // namespace evdom
