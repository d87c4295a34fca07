#include "polarimeter/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "polarimeter/errors.hpp"
#include "polarimeter/metric.hpp"
#include "polarimeter/random.hpp"

namespace polarimeter {

std::size_t dominant_count(double dom_ratio, std::size_t community_size) {
  if (community_size == 1) return 1;
  // The epsilon keeps products like 0.35 * 10 = 3.4999999999999996 on the
  // half-up side.
  const double x = dom_ratio * static_cast<double>(community_size);
  const auto n = static_cast<std::size_t>(std::floor(x + 0.5 + 1e-9));
  return std::min(n, community_size);
}

LabeledGraph relabel(const LabeledGraph& g, const Partition& p, const SyntheticLabelConfig& cfg) {
  if (cfg.num_opinions < 2) throw InputError("relabel: num_opinions must be at least 2");
  if (!(cfg.dom_ratio > 0.0 && cfg.dom_ratio <= 1.0)) throw InputError("relabel: dom_ratio must be in (0, 1]");
  if (p.size() != g.node_count()) throw InvariantError("partition does not cover the graph");

  Rng rng(cfg.seed);
  std::vector<Opinion> labels(g.node_count());
  for (std::vector<NodeIndex>& members : p.members()) {
    const auto dominant = static_cast<std::uint32_t>(rng.below(cfg.num_opinions));
    const std::size_t n_dom = dominant_count(cfg.dom_ratio, members.size());
    for (std::size_t i = 0; i < n_dom; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(members.size() - i));
      std::swap(members[i], members[j]);
      labels[members[i]] = Opinion{dominant};
    }
    for (std::size_t i = n_dom; i < members.size(); ++i) {
      auto other = static_cast<std::uint32_t>(rng.below(cfg.num_opinions - 1));
      if (other >= dominant) ++other;
      labels[members[i]] = Opinion{other};
    }
  }
  return g.with_opinions(std::move(labels), cfg.num_opinions);
}

PlantedGraph generate_sbm(const SbmConfig& cfg) {
  if (cfg.blocks == 0 || cfg.nodes_per_block == 0) throw InputError("sbm: blocks must be non-empty");
  if (!(cfg.p_out >= 0.0 && cfg.p_out < cfg.p_in && cfg.p_in <= 1.0)) {
    throw InputError("sbm: need 0 <= p_out < p_in <= 1");
  }
  const std::size_t n = cfg.blocks * cfg.nodes_per_block;
  Rng rng(cfg.seed);
  GraphBuilder builder;
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = std::to_string(i);
    builder.add_node(names[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bi = i / cfg.nodes_per_block;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double prob = (j / cfg.nodes_per_block == bi) ? cfg.p_in : cfg.p_out;
      if (rng.unit() < prob) builder.add_edge(names[i], names[j], 1.0);
    }
  }

  std::vector<std::uint32_t> block(n);
  for (std::size_t i = 0; i < n; ++i) block[i] = static_cast<std::uint32_t>(i / cfg.nodes_per_block);

  PlantedGraph out{builder.build_unlabeled(2), {}};
  // Node order is numeric, so index i is node "i".
  out.blocks = Partition::from_assignment(block);
  return out;
}

std::vector<SweepCell> sweep(const LabeledGraph& g, const Partition& labeling, const SweepGrid& grid,
                             std::size_t runs, std::uint64_t seed, std::size_t threads) {
  if (grid.num_opinions.empty() || grid.dom_ratios.empty()) throw InputError("sweep: empty grid");
  std::vector<SweepCell> cells;
  cells.reserve(grid.num_opinions.size() * grid.dom_ratios.size());
  for (std::uint32_t k : grid.num_opinions) {
    for (double d : grid.dom_ratios) {
      const auto milli = static_cast<std::uint64_t>(std::llround(d * 1000.0));
      const std::uint64_t cell_seed = mix_seed(mix_seed(seed, k), milli);

      const LabeledGraph labeled = relabel(g, labeling, {d, k, cell_seed});
      LouvainConfig cfg;
      cfg.seed = mix_seed(cell_seed, 1);
      const PolarizationReport report = analyze(labeled, cfg, runs, threads);
      const Summary p = report.polarization();
      cells.push_back({k, d, p.mean, p.std, runs});
    }
  }
  return cells;
}

void save_sweep_csv(std::span<const SweepCell> cells, std::ostream& out) {
  out << "num_opinions,dom_ratio,mean_p,std_p,runs\n";
  char buf[128];
  for (const SweepCell& c : cells) {
    std::snprintf(buf, sizeof(buf), "%u,%.6f,%.6f,%.6f,%zu\n", c.num_opinions, c.dom_ratio,
                  std::fabs(c.mean_p) < 5e-7 ? 0.0 : c.mean_p, std::fabs(c.std_p) < 5e-7 ? 0.0 : c.std_p,
                  c.runs);
    out << buf;
  }
}

std::map<std::pair<std::uint32_t, long>, double> read_sweep_reference(std::istream& in, std::string_view source) {
  std::map<std::pair<std::uint32_t, long>, double> table;
  std::string line;
  std::size_t line_no = 0;
  const std::string src(source);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.rfind("num_opinions", 0) == 0) continue;
    unsigned k = 0;
    double d = 0.0;
    double p = 0.0;
    if (std::sscanf(line.c_str(), "%u,%lf,%lf", &k, &d, &p) != 3) {
      throw InputError(src, line_no, "expected 'num_opinions,dom_ratio,mean_p'");
    }
    table[{k, std::lround(d * 1000.0)}] = p;
  }
  return table;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mean = (static_cast<double>(x.size()) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace polarimeter
