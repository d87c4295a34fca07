#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polarimeter {

using NodeIndex = std::uint32_t;

// Index into an opinion universe of size num_opinions.
struct Opinion {
  std::uint32_t value = 0;

  friend constexpr bool operator==(Opinion, Opinion) = default;
  friend constexpr auto operator<=>(Opinion, Opinion) = default;
};

// Undirected weighted edge, stored with u < v.
struct Edge {
  NodeIndex u = 0;
  NodeIndex v = 0;
  double weight = 1.0;
};

struct Neighbor {
  NodeIndex node = 0;
  double weight = 0.0;
  std::size_t edge = 0;  // index into LabeledGraph::edges()
};

// Orders node names so that integer ids sort numerically ("2" < "10") and
// precede all non-integer names, which sort lexicographically.
bool node_name_less(std::string_view a, std::string_view b);

// Immutable undirected weighted graph with one opinion label per node.
//
// Nodes are stored in node_name_less order and edges sorted by (u, v), so the
// same node/edge sets always produce the same graph regardless of the order
// they were supplied in. Construct through GraphBuilder.
class LabeledGraph {
 public:
  LabeledGraph() = default;

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint32_t num_opinions() const { return num_opinions_; }

  std::span<const Edge> edges() const { return edges_; }
  std::span<const Opinion> opinions() const { return opinions_; }
  std::span<const std::string> names() const { return names_; }

  Opinion opinion(NodeIndex n) const { return opinions_[n]; }
  const std::string& name(NodeIndex n) const { return names_[n]; }
  std::optional<NodeIndex> find(std::string_view name) const;

  std::span<const Neighbor> neighbors(NodeIndex n) const {
    return {adjacency_.data() + offsets_[n], adjacency_.data() + offsets_[n + 1]};
  }
  double strength(NodeIndex n) const { return strength_[n]; }
  double total_weight() const { return total_weight_; }

  // Same structure with a new labeling. labels.size() must equal
  // node_count() and every label must be < num_opinions.
  LabeledGraph with_opinions(std::vector<Opinion> labels, std::uint32_t num_opinions) const;

 private:
  friend class GraphBuilder;

  void build_adjacency();

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<Opinion> opinions_;
  std::uint32_t num_opinions_ = 2;

  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> strength_;
  double total_weight_ = 0.0;
};

// Accumulates edges and labels keyed by node name, then validates.
//
// Parallel and reversed edges are merged by summing weights; self-loops are
// dropped and counted. Nodes that appear only in labels become isolated.
class GraphBuilder {
 public:
  // Throws InputError for weight <= 0 or non-finite weight.
  void add_edge(std::string_view u, std::string_view v, double weight = 1.0);
  void add_node(std::string_view name);
  // A later label for the same node replaces the earlier one.
  void set_opinion(std::string_view name, Opinion opinion);

  std::size_t self_loops_dropped() const { return self_loops_; }

  // num_opinions == 0 means max label + 1, but at least 2.
  // Throws InputError when a node has no label or a label is out of range.
  LabeledGraph build(std::uint32_t num_opinions = 0) const;

  // Like build() but unlabeled nodes get opinion 0.
  LabeledGraph build_unlabeled(std::uint32_t num_opinions = 2) const;

 private:
  LabeledGraph finish(bool require_labels, std::uint32_t num_opinions) const;

  struct NameLess {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const { return node_name_less(a, b); }
  };

  std::set<std::string, NameLess> nodes_;
  std::map<std::pair<std::string, std::string>, double> weights_;  // (lo, hi) by name order
  std::map<std::string, Opinion, NameLess> labels_;
  std::size_t self_loops_ = 0;
};

// Node counts per opinion. Isolated nodes are included.
struct OpinionCensus {
  std::vector<std::size_t> counts;  // indexed by opinion value
  std::size_t total = 0;

  double fraction(Opinion o) const {
    return total == 0 ? 0.0 : static_cast<double>(counts[o.value]) / static_cast<double>(total);
  }
};

OpinionCensus census(const LabeledGraph& g);

}  // namespace polarimeter
