#include "polarimeter/metric.hpp"

#include <algorithm>
#include <cmath>

#include "polarimeter/errors.hpp"
#include "polarimeter/parallel.hpp"

namespace polarimeter {

OpinionMatrix::OpinionMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : OpinionMatrix(rows.size()) {
  std::size_t m = 0;
  for (const auto& row : rows) {
    if (row.size() != size_) throw InputError("opinion matrix must be square");
    std::size_t n = 0;
    for (double x : row) (*this)(m, n++) = x;
    ++m;
  }
}

double OpinionMatrix::total() const {
  double s = 0.0;
  for (std::size_t m = 0; m < size_; ++m) {
    for (std::size_t n = m; n < size_; ++n) s += (*this)(m, n);
  }
  return s;
}

double OpinionMatrix::cross() const {
  double s = 0.0;
  for (std::size_t m = 0; m < size_; ++m) {
    for (std::size_t n = m + 1; n < size_; ++n) s += (*this)(m, n);
  }
  return s;
}

ScaledWeights scale_weights(const LabeledGraph& g, const OpinionCensus& census) {
  if (census.counts.size() != g.num_opinions() || census.total != g.node_count()) {
    throw InvariantError("census does not match graph");
  }
  ScaledWeights ws;
  ws.values.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    const double factor = (census.fraction(g.opinion(e.u)) + census.fraction(g.opinion(e.v))) / 2.0;
    ws.values.push_back(factor * e.weight);
  }
  return ws;
}

FrequencyMatrices accumulate(const LabeledGraph& g, const ScaledWeights& weights, const Partition& p) {
  if (p.size() != g.node_count()) throw InvariantError("partition does not cover the graph");
  if (weights.values.size() != g.edge_count()) throw InvariantError("scaled weights do not match graph");

  FrequencyMatrices fm{OpinionMatrix(g.num_opinions()), OpinionMatrix(g.num_opinions())};
  const auto edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    OpinionMatrix& f = p[e.u] == p[e.v] ? fm.within : fm.between;
    const std::uint32_t oi = g.opinion(e.u).value;
    const std::uint32_t oj = g.opinion(e.v).value;
    f(oi, oj) += weights.values[k];
    if (oi != oj) f(oj, oi) = f(oi, oj);
  }
  return fm;
}

double polarization_component(const OpinionMatrix& f) {
  for (std::size_t m = 0; m < f.size(); ++m) {
    for (std::size_t n = 0; n < f.size(); ++n) {
      if (f(m, n) < 0.0) throw InputError("frequency matrix has a negative entry");
      const double tol = 1e-9 * std::max({1.0, f(m, n), f(n, m)});
      if (std::fabs(f(m, n) - f(n, m)) > tol) throw InputError("frequency matrix is not symmetric");
    }
  }
  const double total = f.total();
  if (total == 0.0) return 0.0;
  const double ratio = f.cross() / total;
  const double capped = ratio < 0.5 ? ratio : 0.5;
  return 1.0 - 2.0 * capped;
}

double combine(const FrequencyMatrices& fm, double p_within, double p_between) {
  const double sw = fm.within.total();
  const double sb = fm.between.total();
  if (sw + sb == 0.0) throw InputError("no scaled edge weight to combine");
  return (sw * p_within + sb * p_between) / (sw + sb);
}

RunScore score_partition(const LabeledGraph& g, const ScaledWeights& weights, const Partition& p) {
  const FrequencyMatrices fm = accumulate(g, weights, p);
  RunScore s;
  s.p_within = polarization_component(fm.within);
  s.p_between = polarization_component(fm.between);
  s.polarization = combine(fm, s.p_within, s.p_between);
  s.within_mass = fm.within.total();
  s.between_mass = fm.between.total();
  s.communities = p.community_count();
  return s;
}

PolarizationReport analyze(const LabeledGraph& g, const LouvainConfig& cfg, std::size_t runs,
                           std::size_t threads) {
  if (runs == 0) throw InputError("analyze: runs must be at least 1");
  const ScaledWeights weights = scale_weights(g, census(g));

  PolarizationReport report;
  report.nodes = g.node_count();
  report.edges = g.edge_count();
  report.num_opinions = g.num_opinions();
  report.seed = cfg.seed;
  report.runs.resize(runs);

  parallel_for(runs, threads, [&](std::size_t r) {
    LouvainConfig run_cfg = cfg;
    run_cfg.seed = cfg.seed + r;
    const Partition p = louvain(g, run_cfg);
    RunScore s = score_partition(g, weights, p);
    s.seed = run_cfg.seed;
    s.modularity = modularity(g, p, cfg.resolution);
    report.runs[r] = s;
  });

  for (const RunScore& s : report.runs) {
    const double lo = std::min(s.p_within, s.p_between) - 1e-12;
    const double hi = std::max(s.p_within, s.p_between) + 1e-12;
    if (s.polarization < lo || s.polarization > hi) {
      throw InvariantError("polarization outside [min(P_W, P_B), max(P_W, P_B)]");
    }
  }
  return report;
}

}  // namespace polarimeter
