#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "polarimeter/community.hpp"
#include "polarimeter/graph.hpp"

namespace polarimeter {

struct SyntheticLabelConfig {
  double dom_ratio = 1.0;  // (0, 1]
  std::uint32_t num_opinions = 2;
  std::uint64_t seed = 0;
};

// round-half-up(dom_ratio * size); a single-node community is always
// dominant.
std::size_t dominant_count(double dom_ratio, std::size_t community_size);

// New labeling with controlled polarization. For each community (in id
// order) a dominant opinion is drawn uniformly, dominant_count() members
// chosen uniformly without replacement receive it, and every other member
// gets an independent uniform draw from the remaining opinions. Structure is
// copied unchanged.
LabeledGraph relabel(const LabeledGraph& g, const Partition& p, const SyntheticLabelConfig& cfg);

struct SbmConfig {
  std::size_t blocks = 2;
  std::size_t nodes_per_block = 10;
  double p_in = 0.5;
  double p_out = 0.0;
  std::uint64_t seed = 0;
};

struct PlantedGraph {
  LabeledGraph graph;  // unit weights, all labels 0, node names "0".."n-1"
  Partition blocks;    // planted block of each node
};

// Bernoulli edge per node pair: p_in inside a block, p_out across blocks.
PlantedGraph generate_sbm(const SbmConfig& cfg);

struct SweepGrid {
  std::vector<std::uint32_t> num_opinions;
  std::vector<double> dom_ratios;
};

struct SweepCell {
  std::uint32_t num_opinions = 0;
  double dom_ratio = 0.0;
  double mean_p = 0.0;
  double std_p = 0.0;
  std::size_t runs = 0;
};

// For every (num_opinions, dom_ratio) cell: relabel g over `labeling`, then
// analyze with `runs` Louvain runs. Cell seeds are derived from (seed,
// num_opinions, dom_ratio), so a cell's result does not depend on the rest of
// the grid. Rows are ordered by num_opinions, then dom_ratio, as given.
std::vector<SweepCell> sweep(const LabeledGraph& g, const Partition& labeling, const SweepGrid& grid,
                             std::size_t runs, std::uint64_t seed, std::size_t threads = 1);

// Header `num_opinions,dom_ratio,mean_p,std_p,runs`.
void save_sweep_csv(std::span<const SweepCell> cells, std::ostream& out);

// Reads `num_opinions,dom_ratio,mean_p[,...]` rows keyed by
// (num_opinions, dom_ratio in thousandths).
std::map<std::pair<std::uint32_t, long>, double> read_sweep_reference(std::istream& in, std::string_view source);

// Spearman rank correlation with average ranks for ties. NaN when either
// side is constant or the sizes differ.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace polarimeter
