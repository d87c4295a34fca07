#include "polarimeter/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "polarimeter/errors.hpp"

namespace polarimeter {

namespace {

std::optional<std::uint64_t> as_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

bool node_name_less(std::string_view a, std::string_view b) {
  const auto ia = as_integer(a);
  const auto ib = as_integer(b);
  if (ia && ib) {
    // "007" and "7" are distinct names with equal value; fall back to text.
    if (*ia != *ib) return *ia < *ib;
    return a < b;
  }
  if (ia.has_value() != ib.has_value()) return ia.has_value();
  return a < b;
}

std::optional<NodeIndex> LabeledGraph::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const std::string& x, std::string_view y) { return node_name_less(x, y); });
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<NodeIndex>(it - names_.begin());
}

void LabeledGraph::build_adjacency() {
  const std::size_t n = names_.size();
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];

  adjacency_.assign(offsets_[n], Neighbor{});
  strength_.assign(n, 0.0);
  total_weight_ = 0.0;
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    adjacency_[cursor[e.u]++] = Neighbor{e.v, e.weight, k};
    adjacency_[cursor[e.v]++] = Neighbor{e.u, e.weight, k};
    strength_[e.u] += e.weight;
    strength_[e.v] += e.weight;
    total_weight_ += e.weight;
  }
}

LabeledGraph LabeledGraph::with_opinions(std::vector<Opinion> labels, std::uint32_t num_opinions) const {
  if (labels.size() != node_count()) {
    throw InvariantError("with_opinions: label count does not match node count");
  }
  if (num_opinions < 2) throw InputError("number of opinions must be at least 2");
  for (Opinion o : labels) {
    if (o.value >= num_opinions) throw InputError("opinion index out of range");
  }
  LabeledGraph out = *this;
  out.opinions_ = std::move(labels);
  out.num_opinions_ = num_opinions;
  return out;
}

void GraphBuilder::add_edge(std::string_view u, std::string_view v, double weight) {
  if (!std::isfinite(weight) || weight <= 0.0) {
    throw InputError("edge weight must be positive and finite");
  }
  add_node(u);
  add_node(v);
  if (u == v) {
    ++self_loops_;
    return;
  }
  std::string a(u), b(v);
  if (node_name_less(b, a)) std::swap(a, b);
  weights_[{std::move(a), std::move(b)}] += weight;
}

void GraphBuilder::add_node(std::string_view name) {
  if (nodes_.find(name) == nodes_.end()) nodes_.emplace(name);
}

void GraphBuilder::set_opinion(std::string_view name, Opinion opinion) {
  add_node(name);
  auto it = labels_.find(name);
  if (it == labels_.end()) {
    labels_.emplace(std::string(name), opinion);
  } else {
    it->second = opinion;
  }
}

LabeledGraph GraphBuilder::build(std::uint32_t num_opinions) const { return finish(true, num_opinions); }

LabeledGraph GraphBuilder::build_unlabeled(std::uint32_t num_opinions) const {
  return finish(false, num_opinions);
}

LabeledGraph GraphBuilder::finish(bool require_labels, std::uint32_t num_opinions) const {
  LabeledGraph g;
  g.names_.assign(nodes_.begin(), nodes_.end());

  std::uint32_t max_label = 0;
  g.opinions_.reserve(g.names_.size());
  for (const std::string& name : g.names_) {
    auto it = labels_.find(name);
    if (it == labels_.end()) {
      if (require_labels) throw InputError("node '" + name + "' has no opinion label");
      g.opinions_.push_back(Opinion{0});
      continue;
    }
    g.opinions_.push_back(it->second);
    max_label = std::max(max_label, it->second.value);
  }

  if (num_opinions == 0) {
    num_opinions = std::max<std::uint32_t>(2, max_label + 1);
  }
  if (num_opinions < 2) throw InputError("number of opinions must be at least 2");
  if (max_label >= num_opinions) {
    throw InputError("opinion index " + std::to_string(max_label) + " out of range for " +
                     std::to_string(num_opinions) + " opinions");
  }
  g.num_opinions_ = num_opinions;

  g.edges_.reserve(weights_.size());
  for (const auto& [key, weight] : weights_) {
    auto u = *g.find(key.first);
    auto v = *g.find(key.second);
    g.edges_.push_back(Edge{u, v, weight});
  }
  // weights_ is keyed in plain string order; put edges in index order.
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  g.build_adjacency();
  return g;
}

OpinionCensus census(const LabeledGraph& g) {
  OpinionCensus c;
  c.counts.assign(g.num_opinions(), 0);
  for (Opinion o : g.opinions()) ++c.counts[o.value];
  c.total = g.node_count();
  return c;
}

}  // namespace polarimeter
