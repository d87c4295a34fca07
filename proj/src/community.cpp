#include "polarimeter/community.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

#include "polarimeter/errors.hpp"
#include "polarimeter/random.hpp"

namespace polarimeter {

Partition Partition::from_assignment(std::span<const std::uint32_t> raw) {
  Partition p;
  p.assignment_.resize(raw.size());
  std::vector<CommunityId> remap;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::uint32_t r = raw[i];
    if (r >= remap.size()) remap.resize(static_cast<std::size_t>(r) + 1, UINT32_MAX);
    if (remap[r] == UINT32_MAX) remap[r] = static_cast<CommunityId>(p.count_++);
    p.assignment_[i] = remap[r];
  }
  return p;
}

Partition Partition::singletons(std::size_t nodes) {
  Partition p;
  p.assignment_.resize(nodes);
  std::iota(p.assignment_.begin(), p.assignment_.end(), CommunityId{0});
  p.count_ = nodes;
  return p;
}

std::vector<std::vector<NodeIndex>> Partition::members() const {
  std::vector<std::vector<NodeIndex>> out(count_);
  for (NodeIndex n = 0; n < assignment_.size(); ++n) out[assignment_[n]].push_back(n);
  return out;
}

double modularity(const LabeledGraph& g, const Partition& p, double resolution) {
  if (p.size() != g.node_count()) throw InvariantError("partition does not cover the graph");
  const double m2 = 2.0 * g.total_weight();
  if (!(m2 > 0.0)) throw InputError("modularity is undefined for a graph with no edge weight");

  std::vector<double> internal(p.community_count(), 0.0);
  std::vector<double> total(p.community_count(), 0.0);
  for (const Edge& e : g.edges()) {
    if (p[e.u] == p[e.v]) internal[p[e.u]] += 2.0 * e.weight;
  }
  for (NodeIndex n = 0; n < g.node_count(); ++n) total[p[n]] += g.strength(n);

  double q = 0.0;
  for (std::size_t c = 0; c < internal.size(); ++c) {
    const double frac = total[c] / m2;
    q += internal[c] / m2 - resolution * frac * frac;
  }
  return q;
}

namespace {

// Weighted graph at one aggregation level. Self-loop weight counts each
// internal edge of the super-node once; degree includes it twice.
struct LevelGraph {
  std::vector<std::size_t> offsets;
  std::vector<std::pair<std::uint32_t, double>> adjacency;
  std::vector<double> self_loop;
  std::vector<double> degree;

  std::size_t size() const { return self_loop.size(); }

  std::span<const std::pair<std::uint32_t, double>> neighbors(std::size_t i) const {
    return {adjacency.data() + offsets[i], adjacency.data() + offsets[i + 1]};
  }
};

LevelGraph from_graph(const LabeledGraph& g) {
  LevelGraph lg;
  const std::size_t n = g.node_count();
  lg.offsets.resize(n + 1, 0);
  lg.self_loop.assign(n, 0.0);
  lg.degree.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = g.neighbors(static_cast<NodeIndex>(i));
    lg.offsets[i + 1] = lg.offsets[i] + nb.size();
    for (const Neighbor& x : nb) lg.adjacency.emplace_back(x.node, x.weight);
    lg.degree[i] = g.strength(static_cast<NodeIndex>(i));
  }
  return lg;
}

// Collapses each community of `comm` (dense ids 0..k-1) into one node.
LevelGraph aggregate(const LevelGraph& lg, std::span<const std::uint32_t> comm, std::size_t k) {
  LevelGraph out;
  out.self_loop.assign(k, 0.0);
  out.degree.assign(k, 0.0);

  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> cross;
  for (std::size_t i = 0; i < lg.size(); ++i) {
    const std::uint32_t ci = comm[i];
    out.self_loop[ci] += lg.self_loop[i];
    out.degree[ci] += lg.degree[i];
    for (const auto& [j, w] : lg.neighbors(i)) {
      const std::uint32_t cj = comm[j];
      if (ci == cj) {
        if (i < j) out.self_loop[ci] += w;
      } else {
        cross.emplace_back(ci, cj, w);
      }
    }
  }
  std::stable_sort(cross.begin(), cross.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });

  out.offsets.assign(k + 1, 0);
  for (std::size_t idx = 0; idx < cross.size();) {
    const std::uint32_t a = std::get<0>(cross[idx]);
    const std::uint32_t b = std::get<1>(cross[idx]);
    double w = 0.0;
    while (idx < cross.size() && std::get<0>(cross[idx]) == a && std::get<1>(cross[idx]) == b) {
      w += std::get<2>(cross[idx]);
      ++idx;
    }
    out.adjacency.emplace_back(b, w);
    ++out.offsets[a + 1];
  }
  for (std::size_t c = 0; c < k; ++c) out.offsets[c + 1] += out.offsets[c];
  return out;
}

double level_modularity(const LevelGraph& lg, std::span<const std::uint32_t> comm, double m2,
                        double resolution) {
  std::vector<double> internal(lg.size(), 0.0);
  std::vector<double> total(lg.size(), 0.0);
  for (std::size_t i = 0; i < lg.size(); ++i) {
    internal[comm[i]] += 2.0 * lg.self_loop[i];
    total[comm[i]] += lg.degree[i];
    for (const auto& [j, w] : lg.neighbors(i)) {
      if (comm[j] == comm[i]) internal[comm[i]] += w;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < lg.size(); ++c) {
    const double frac = total[c] / m2;
    q += internal[c] / m2 - resolution * frac * frac;
  }
  return q;
}

// Local moving on one level. Returns true if any node changed community.
bool move_nodes(const LevelGraph& lg, std::vector<std::uint32_t>& comm, double m2, const LouvainConfig& cfg,
                Rng& rng, const std::function<void(double)>& on_pass) {
  const std::size_t n = lg.size();
  std::vector<double> total(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) total[comm[i]] += lg.degree[i];

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);

  std::vector<double> link(n, -1.0);
  std::vector<std::uint32_t> touched;

  bool any_move = false;
  double q = level_modularity(lg, comm, m2, cfg.resolution);
  while (true) {
    rng.shuffle(std::span<std::uint32_t>(order));
    bool moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t old = comm[i];
      const double ki = lg.degree[i];

      touched.clear();
      link[old] = 0.0;
      touched.push_back(old);
      for (const auto& [j, w] : lg.neighbors(i)) {
        const std::uint32_t c = comm[j];
        if (link[c] < 0.0) {
          link[c] = 0.0;
          touched.push_back(c);
        }
        link[c] += w;
      }

      total[old] -= ki;
      std::uint32_t best = old;
      double best_score = link[old] - cfg.resolution * total[old] * ki / m2;
      std::sort(touched.begin(), touched.end());
      for (std::uint32_t c : touched) {
        if (c == old) continue;
        const double score = link[c] - cfg.resolution * total[c] * ki / m2;
        if (score > best_score) {
          best = c;
          best_score = score;
        }
      }
      total[best] += ki;
      comm[i] = best;
      if (best != old) moved = true;

      for (std::uint32_t c : touched) link[c] = -1.0;
    }
    if (!moved) break;
    any_move = true;
    const double next = level_modularity(lg, comm, m2, cfg.resolution);
    on_pass(next);
    const double gain = next - q;
    q = next;
    if (gain < cfg.min_modularity_gain) break;
  }
  return any_move;
}

}  // namespace

Partition louvain(const LabeledGraph& g, const LouvainConfig& cfg, LouvainTrace* trace) {
  if (!(cfg.resolution > 0.0)) throw InputError("louvain: resolution must be positive");
  if (!(cfg.min_modularity_gain > 0.0)) throw InputError("louvain: min_modularity_gain must be positive");
  const double m2 = 2.0 * g.total_weight();
  if (g.edge_count() == 0 || !(m2 > 0.0)) throw InputError("louvain: graph has no edges");

  Rng rng(cfg.seed);
  LevelGraph level = from_graph(g);
  std::vector<std::uint32_t> node_comm(g.node_count());
  std::iota(node_comm.begin(), node_comm.end(), 0u);

  std::size_t depth = 0;
  const auto record = [&](double q) {
    if (trace) {
      trace->modularity.push_back(q);
      trace->level.push_back(depth);
    }
  };

  while (true) {
    std::vector<std::uint32_t> comm(level.size());
    std::iota(comm.begin(), comm.end(), 0u);
    if (!move_nodes(level, comm, m2, cfg, rng, record)) break;

    // Dense renumbering in order of first appearance.
    std::vector<std::uint32_t> dense(level.size(), UINT32_MAX);
    std::uint32_t k = 0;
    for (auto& c : comm) {
      if (dense[c] == UINT32_MAX) dense[c] = k++;
      c = dense[c];
    }
    for (auto& c : node_comm) c = comm[c];
    if (k == level.size()) break;
    level = aggregate(level, comm, k);
    ++depth;
  }
  return Partition::from_assignment(node_comm);
}

}  // namespace polarimeter
