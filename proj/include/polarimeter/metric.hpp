#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "polarimeter/community.hpp"
#include "polarimeter/graph.hpp"
#include "polarimeter/report.hpp"

namespace polarimeter {

// Per-edge weights rescaled by opinion-group size, indexed like g.edges():
//   w_s(i, j) = (|N_Oi| / |N| + |N_Oj| / |N|) / 2 * w(i, j)
struct ScaledWeights {
  std::vector<double> values;
};

ScaledWeights scale_weights(const LabeledGraph& g, const OpinionCensus& census);

// Dense symmetric num_opinions x num_opinions tally of scaled edge weight.
class OpinionMatrix {
 public:
  explicit OpinionMatrix(std::size_t size = 0) : size_(size), cells_(size * size, 0.0) {}
  OpinionMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t size() const { return size_; }
  double operator()(std::size_t m, std::size_t n) const { return cells_[m * size_ + n]; }
  double& operator()(std::size_t m, std::size_t n) { return cells_[m * size_ + n]; }

  // Sum over m <= n (every undirected edge counted once).
  double total() const;
  // Sum over m < n (cross-opinion mass).
  double cross() const;

  friend bool operator==(const OpinionMatrix&, const OpinionMatrix&) = default;

 private:
  std::size_t size_;
  std::vector<double> cells_;
};

struct FrequencyMatrices {
  OpinionMatrix within;
  OpinionMatrix between;
};

// Adds each edge's scaled weight to within(O_i, O_j) when both endpoints
// share a community and to between(O_i, O_j) otherwise, mirroring the entry
// for cross-opinion edges.
FrequencyMatrices accumulate(const LabeledGraph& g, const ScaledWeights& weights, const Partition& p);

// 1 - 2 * cap(cross / total), cap(x) = min(x, 0.5). Returns 0 for an empty
// matrix. Throws InputError for a negative or asymmetric matrix.
double polarization_component(const OpinionMatrix& f);

// Mass-weighted mean of the two components. Throws InputError when both
// matrices are empty.
double combine(const FrequencyMatrices& fm, double p_within, double p_between);

// Full score for one fixed partition.
RunScore score_partition(const LabeledGraph& g, const ScaledWeights& weights, const Partition& p);

// Runs Louvain `runs` times with seeds cfg.seed + r and scores each run.
// Runs are spread over `threads` workers; the report is identical for any
// thread count.
PolarizationReport analyze(const LabeledGraph& g, const LouvainConfig& cfg, std::size_t runs = 100,
                           std::size_t threads = 1);

}  // namespace polarimeter
