#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polarimeter/graph.hpp"

namespace polarimeter {

using CommunityId = std::uint32_t;

// Node -> community assignment with dense ids 0..k-1, every id non-empty.
class Partition {
 public:
  Partition() = default;

  // Relabels arbitrary ids to 0..k-1 in order of first appearance.
  static Partition from_assignment(std::span<const std::uint32_t> raw);
  static Partition singletons(std::size_t nodes);

  std::size_t size() const { return assignment_.size(); }
  std::size_t community_count() const { return count_; }
  CommunityId operator[](NodeIndex n) const { return assignment_[n]; }
  std::span<const CommunityId> assignment() const { return assignment_; }

  // Members of every community, each list in ascending node order.
  std::vector<std::vector<NodeIndex>> members() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<CommunityId> assignment_;
  std::size_t count_ = 0;
};

struct LouvainConfig {
  std::uint64_t seed = 0;
  double resolution = 1.0;
  double min_modularity_gain = 1e-7;
};

// Modularity after each local-move pass, recorded when a trace is passed to
// louvain(). Values are for the partition of the original graph.
struct LouvainTrace {
  std::vector<double> modularity;
  std::vector<std::size_t> level;  // aggregation level of each entry
};

// Q = sum_c [ in(c) / 2m - resolution * (tot(c) / 2m)^2 ], in(c) counting
// both directions of every internal edge. Throws InputError when the graph
// has no edge weight and InvariantError when p does not cover g.
double modularity(const LabeledGraph& g, const Partition& p, double resolution = 1.0);

// Multi-level Louvain modularity optimisation.
//
// Each pass visits nodes in a seeded random order and moves a node to the
// neighbouring community with the largest modularity gain; the current
// community wins ties, remaining ties go to the lowest community id. Passes
// repeat while the pass gain exceeds min_modularity_gain, then communities
// are collapsed into weighted super-nodes (internal weight kept as a
// self-loop) and the process repeats until a level makes no move.
// Isolated nodes stay singletons. Deterministic for a given (graph, seed).
Partition louvain(const LabeledGraph& g, const LouvainConfig& cfg, LouvainTrace* trace = nullptr);

}  // namespace polarimeter
