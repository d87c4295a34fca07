#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "../support/oracles.hpp"
#include "polarimeter/errors.hpp"
#include "polarimeter/metric.hpp"

using namespace polarimeter;

namespace {

LabeledGraph build(std::initializer_list<std::tuple<const char*, const char*, double>> edges,
                   std::initializer_list<std::pair<const char*, std::uint32_t>> labels, std::uint32_t k = 0) {
  GraphBuilder b;
  for (auto [u, v, w] : edges) b.add_edge(u, v, w);
  for (auto [n, o] : labels) b.set_opinion(n, Opinion{o});
  return b.build(k);
}

Partition by_name(const LabeledGraph& g, std::initializer_list<std::pair<const char*, std::uint32_t>> comm) {
  std::vector<std::uint32_t> raw(g.node_count(), 0);
  for (auto [n, c] : comm) raw[*g.find(n)] = c;
  return Partition::from_assignment(raw);
}

// 13 nodes of opinion 0 (a0..a12) and 9 of opinion 1 (b0..b8).
LabeledGraph thirteen_nine() {
  GraphBuilder b;
  for (int i = 0; i < 13; ++i) b.set_opinion("a" + std::to_string(i), Opinion{0});
  for (int i = 0; i < 9; ++i) b.set_opinion("b" + std::to_string(i), Opinion{1});
  b.add_edge("a0", "a1");
  b.add_edge("a2", "b0");
  b.add_edge("b1", "b2");
  return b.build();
}

double score_of(const LabeledGraph& g, const Partition& p) {
  return score_partition(g, scale_weights(g, census(g)), p).polarization;
}

}  // namespace

TEST_CASE("scaled weights follow the opinion-share average") {
  const auto g = thirteen_nine();
  const auto ws = scale_weights(g, census(g));
  REQUIRE(ws.values.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const Edge& e = g.edges()[k];
    const auto ou = g.opinion(e.u).value, ov = g.opinion(e.v).value;
    if (ou == 0 && ov == 0) CHECK(ws.values[k] == doctest::Approx(13.0 / 22.0));
    if (ou != ov) CHECK(ws.values[k] == doctest::Approx(0.5));
    if (ou == 1 && ov == 1) CHECK(ws.values[k] == doctest::Approx(9.0 / 22.0));
  }

  const auto uniform = build({{"x", "y", 2.5}, {"y", "z", 4.0}}, {{"x", 1}, {"y", 1}, {"z", 1}});
  const auto wu = scale_weights(uniform, census(uniform));
  CHECK(wu.values == std::vector<double>{2.5, 4.0});
}

TEST_CASE("scaled weights never exceed raw weights") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng.below(20);
    std::vector<std::uint32_t> labels(n);
    for (auto& l : labels) l = static_cast<std::uint32_t>(rng.below(4));
    const auto g = oracle::to_graph(oracle::random_weights(rng, n, 0.3), labels, 4);
    const auto ws = scale_weights(g, census(g));
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
      CHECK(ws.values[k] > 0.0);
      CHECK(ws.values[k] <= g.edges()[k].weight);
    }
  }
}

TEST_CASE("accumulate") {
  SUBCASE("single same-opinion edge inside one community") {
    const auto g = build({{"a", "b", 1}}, {{"a", 0}, {"b", 0}});
    const auto ws = scale_weights(g, census(g));
    const auto fm = accumulate(g, ws, Partition::from_assignment(std::vector<std::uint32_t>{0, 0}));
    CHECK(fm.within(0, 0) == ws.values[0]);
    CHECK(fm.between.total() == 0.0);
  }
  SUBCASE("single cross-opinion edge between communities is mirrored") {
    const auto g = build({{"a", "b", 1}}, {{"a", 0}, {"b", 1}});
    const auto ws = scale_weights(g, census(g));
    const auto fm = accumulate(g, ws, Partition::singletons(2));
    CHECK(fm.between(0, 1) == ws.values[0]);
    CHECK(fm.between(1, 0) == ws.values[0]);
    CHECK(fm.within.total() == 0.0);
  }
  SUBCASE("path a-b-c-d split into {a,b} and {c,d}") {
    const auto g = build({{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}}, {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
    const auto p = by_name(g, {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
    const ScaledWeights ones{{1.0, 1.0, 1.0}};
    const auto fm = accumulate(g, ones, p);
    CHECK(fm.within == OpinionMatrix{{1.0, 0.0}, {0.0, 1.0}});
    CHECK(fm.between == OpinionMatrix{{0.0, 1.0}, {1.0, 0.0}});
  }
  SUBCASE("partition must cover the graph") {
    const auto g = build({{"a", "b", 1}}, {{"a", 0}, {"b", 0}});
    CHECK_THROWS_AS(accumulate(g, scale_weights(g, census(g)), Partition::singletons(5)), InvariantError);
  }
}

TEST_CASE("polarization component") {
  CHECK(polarization_component(OpinionMatrix{{0.6, 0.0}, {0.0, 0.4}}) == 1.0);
  CHECK(polarization_component(OpinionMatrix{{0.25, 0.5}, {0.5, 0.25}}) == 0.0);
  CHECK(polarization_component(OpinionMatrix{{0.1, 0.9}, {0.9, 0.0}}) == 0.0);
  CHECK(polarization_component(OpinionMatrix(3)) == 0.0);

  // cross / total = 0.16 -> 0.68 and 0.345 -> 0.31.
  CHECK(polarization_component(OpinionMatrix{{20.0, 4.8}, {4.8, 5.2}}) == doctest::Approx(0.68).epsilon(1e-12));
  CHECK(polarization_component(OpinionMatrix{{3.0, 2.415}, {2.415, 1.585}}) == doctest::Approx(0.31).epsilon(1e-12));

  CHECK_THROWS_AS(polarization_component(OpinionMatrix{{-1.0, 0.0}, {0.0, 1.0}}), InputError);
  CHECK_THROWS_AS(polarization_component(OpinionMatrix{{1.0, 0.5}, {0.0, 1.0}}), InputError);
}

TEST_CASE("combine") {
  SUBCASE("one within mass of 1, one between mass of 0.5") {
    FrequencyMatrices fm{OpinionMatrix{{0.5, 0.0}, {0.0, 0.5}}, OpinionMatrix{{0.0, 0.5}, {0.5, 0.0}}};
    CHECK(combine(fm, 1.0, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("no between mass returns the within score") {
    FrequencyMatrices fm{OpinionMatrix{{0.5, 0.1}, {0.1, 0.5}}, OpinionMatrix(2)};
    CHECK(combine(fm, 0.7, 0.0) == 0.7);
  }
  SUBCASE("masses 30 and 7 with 0.68 and 0.31 give 0.61") {
    FrequencyMatrices fm{OpinionMatrix{{20.0, 4.8}, {4.8, 5.2}}, OpinionMatrix{{3.0, 2.415}, {2.415, 1.585}}};
    const double pw = polarization_component(fm.within);
    const double pb = polarization_component(fm.between);
    CHECK(combine(fm, pw, pb) == doctest::Approx(0.61).epsilon(1e-12));
  }
  SUBCASE("empty matrices") {
    FrequencyMatrices fm{OpinionMatrix(2), OpinionMatrix(2)};
    CHECK_THROWS_AS(combine(fm, 0.0, 0.0), InputError);
  }
}

TEST_CASE("four-node hand example") {
  const auto g = build({{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}}, {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
  const auto p = by_name(g, {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
  const auto s = score_partition(g, scale_weights(g, census(g)), p);
  CHECK(s.p_within == 1.0);
  CHECK(s.p_between == 0.0);
  CHECK(std::abs(s.polarization - 2.0 / 3.0) <= 1e-12);
  CHECK(s.within_mass == doctest::Approx(1.0));
  CHECK(s.between_mass == doctest::Approx(0.5));
}

TEST_CASE("production scoring equals the naive transliteration on every partition") {
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    const auto k = static_cast<std::uint32_t>(2 + rng.below(2));
    const auto w = oracle::random_weights(rng, n, 0.5, trial % 3 == 0);
    std::vector<std::uint32_t> labels(n);
    for (auto& l : labels) l = static_cast<std::uint32_t>(rng.below(k));
    const auto g = oracle::to_graph(w, labels, k);
    const auto ws = scale_weights(g, census(g));
    oracle::for_each_partition(n, [&](const auto& a) {
      const auto got = score_partition(g, ws, Partition::from_assignment(a));
      const auto want = oracle::naive_polarization(w, labels, k, a);
      CHECK(std::abs(got.p_within - want.p_within) <= 1e-9);
      CHECK(std::abs(got.p_between - want.p_between) <= 1e-9);
      CHECK(std::abs(got.polarization - want.p) <= 1e-9);
    });
  }
}

TEST_CASE("metric invariants on random graphs") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + rng.below(40);
    const auto k = static_cast<std::uint32_t>(2 + rng.below(5));
    const auto w = oracle::random_weights(rng, n, 0.2);
    std::vector<std::uint32_t> labels(n), comm(n);
    for (auto& l : labels) l = static_cast<std::uint32_t>(rng.below(k));
    for (auto& c : comm) c = static_cast<std::uint32_t>(rng.below(4));
    const auto g = oracle::to_graph(w, labels, k);
    const auto p = Partition::from_assignment(comm);
    const auto ws = scale_weights(g, census(g));
    const auto fm = accumulate(g, ws, p);
    const auto base = score_partition(g, ws, p);

    // Conservation of scaled mass.
    const double total = std::accumulate(ws.values.begin(), ws.values.end(), 0.0);
    CHECK(std::abs(fm.within.total() + fm.between.total() - total) <= 1e-9);

    // Symmetric, non-negative.
    for (std::uint32_t a = 0; a < k; ++a) {
      for (std::uint32_t b = 0; b < k; ++b) {
        CHECK(fm.within(a, b) == fm.within(b, a));
        CHECK(fm.between(a, b) >= 0.0);
      }
    }

    // Bounds and the weighted-average property.
    CHECK(base.polarization >= std::min(base.p_within, base.p_between) - 1e-12);
    CHECK(base.polarization <= std::max(base.p_within, base.p_between) + 1e-12);
    CHECK(base.polarization >= 0.0);
    CHECK(base.polarization <= 1.0);

    // Relabelling opinions by a permutation changes nothing.
    std::vector<std::uint32_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0u);
    rng.shuffle(std::span<std::uint32_t>(perm));
    std::vector<std::uint32_t> permuted(n);
    for (std::size_t i = 0; i < n; ++i) permuted[i] = perm[labels[i]];
    const auto gp = oracle::to_graph(w, permuted, k);
    const auto sp = score_partition(gp, scale_weights(gp, census(gp)), p);
    CHECK(sp.p_within == doctest::Approx(base.p_within).epsilon(1e-12));
    CHECK(sp.p_between == doctest::Approx(base.p_between).epsilon(1e-12));
    CHECK(sp.polarization == doctest::Approx(base.polarization).epsilon(1e-12));

    // Scaling every raw weight by a constant changes nothing.
    auto scaled = w;
    const double factor = 0.1 + 10.0 * rng.unit();
    for (auto& row : scaled) {
      for (auto& x : row) x *= factor;
    }
    const auto gs = oracle::to_graph(scaled, labels, k);
    CHECK(score_of(gs, p) == doctest::Approx(base.polarization).epsilon(1e-12));

    // All-same labels give 1; all-distinct labels give 0.
    const auto same = g.with_opinions(std::vector<Opinion>(n, Opinion{0}), k);
    CHECK(score_of(same, p) == 1.0);
    std::vector<Opinion> distinct(n);
    for (std::size_t i = 0; i < n; ++i) distinct[i] = Opinion{static_cast<std::uint32_t>(i)};
    const auto all_cross = g.with_opinions(distinct, static_cast<std::uint32_t>(n));
    CHECK(score_of(all_cross, p) == 0.0);
  }
}

TEST_CASE("raising cross-opinion within mass never raises the score") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.below(3);
    FrequencyMatrices fm{OpinionMatrix(k), OpinionMatrix(k)};
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a; b < k; ++b) {
        fm.within(a, b) = fm.within(b, a) = rng.unit();
        fm.between(a, b) = fm.between(b, a) = rng.unit();
      }
    }
    auto score = [](const FrequencyMatrices& f) {
      return combine(f, polarization_component(f.within), polarization_component(f.between));
    };
    const double before = score(fm);
    const std::size_t a = rng.below(k - 1);
    const std::size_t b = a + 1 + rng.below(k - a - 1);
    fm.within(a, b) += rng.unit();
    fm.within(b, a) = fm.within(a, b);
    CHECK(score(fm) <= before + 1e-12);
  }
}

TEST_CASE("analyze") {
  SUBCASE("same-opinion edges score 1 in every run") {
    Rng rng(4);
    const auto w = oracle::random_weights(rng, 30, 0.15);
    std::vector<std::uint32_t> labels(30, 0);
    // Opinion 1 only on nodes without edges, so every edge is same-opinion.
    const auto g0 = oracle::to_graph(w, labels, 2);
    const auto r = analyze(g0, {5}, 10);
    for (const auto& s : r.runs) CHECK(s.polarization == 1.0);
  }
  SUBCASE("seed schedule and determinism") {
    Rng rng(6);
    std::vector<std::uint32_t> labels(25);
    for (auto& l : labels) l = static_cast<std::uint32_t>(rng.below(3));
    const auto g = oracle::to_graph(oracle::random_weights(rng, 25, 0.2), labels, 3);
    const auto a = analyze(g, {100}, 6, 1);
    const auto b = analyze(g, {100}, 6, 3);
    REQUIRE(a.runs.size() == 6);
    for (std::size_t r = 0; r < 6; ++r) {
      CHECK(a.runs[r].seed == 100 + r);
      CHECK(a.runs[r].polarization == b.runs[r].polarization);
      CHECK(a.runs[r].communities == b.runs[r].communities);
      const auto single = analyze(g, {100 + r}, 1);
      CHECK(single.runs[0].polarization == a.runs[r].polarization);
    }
  }
  SUBCASE("zero runs") {
    const auto g = build({{"a", "b", 1}}, {{"a", 0}, {"b", 0}});
    CHECK_THROWS_AS(analyze(g, {}, 0), InputError);
  }
}
