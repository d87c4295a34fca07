#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "polarimeter/graph.hpp"

namespace polarimeter {

class Partition;

struct LoadedGraph {
  LabeledGraph graph;
  std::size_t self_loops_dropped = 0;
};

// Edge rows are `u <sep> v [<sep> w]` (w defaults to 1), label rows are
// `u <sep> opinion_index`. The separator (tab, comma, or else whitespace) is
// detected per file from the first data row; `#` lines and blank lines are
// skipped. Errors are InputError carrying source:line.
LoadedGraph load_graph(std::istream& edges, std::string_view edge_source, std::istream& labels,
                       std::string_view label_source, std::uint32_t num_opinions = 0);
LoadedGraph load_graph(const std::filesystem::path& edge_file, const std::filesystem::path& label_file,
                       std::uint32_t num_opinions = 0);

// Edge list only; every node gets opinion 0.
LoadedGraph load_edge_list(std::istream& edges, std::string_view edge_source);
LoadedGraph load_edge_list(const std::filesystem::path& edge_file);

// Weights are written with 17 significant digits so a reload is exact.
void save_edge_list(const LabeledGraph& g, std::ostream& out);
void save_labels(const LabeledGraph& g, std::ostream& out);
// `node\tcommunity` per line, in node order.
void save_partition(const LabeledGraph& g, const Partition& p, std::ostream& out);

}  // namespace polarimeter
