#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../support/oracles.hpp"
#include "polarimeter/errors.hpp"
#include "polarimeter/metric.hpp"
#include "polarimeter/synthetic.hpp"

using namespace polarimeter;

namespace {

// Upper 0.1% points of the chi-square distribution.
constexpr double kChi2Df1 = 10.828;
constexpr double kChi2Df3 = 16.266;

double chi_square(const std::vector<double>& observed) {
  double total = 0.0;
  for (double o : observed) total += o;
  const double expected = total / static_cast<double>(observed.size());
  double x = 0.0;
  for (double o : observed) x += (o - expected) * (o - expected) / expected;
  return x;
}

}  // namespace

TEST_CASE("dominant count rounds half up") {
  CHECK(dominant_count(0.7, 10) == 7);
  CHECK(dominant_count(0.35, 10) == 4);
  CHECK(dominant_count(0.25, 10) == 3);
  CHECK(dominant_count(0.3, 5) == 2);  // 1.5
  CHECK(dominant_count(0.3, 1) == 1);
  CHECK(dominant_count(1.0, 13) == 13);
}

TEST_CASE("relabel") {
  const auto planted = generate_sbm({3, 10, 0.6, 0.05, 17});
  const auto& g = planted.graph;
  const auto& p = planted.blocks;

  SUBCASE("structure is unchanged") {
    const auto r = relabel(g, p, {0.6, 4, 1});
    CHECK(r.num_opinions() == 4);
    REQUIRE(r.edge_count() == g.edge_count());
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
      CHECK(r.edges()[k].u == g.edges()[k].u);
      CHECK(r.edges()[k].v == g.edges()[k].v);
      CHECK(r.edges()[k].weight == g.edges()[k].weight);
    }
  }
  SUBCASE("dom_ratio 1 makes communities opinion-uniform") {
    const auto r = relabel(g, p, {1.0, 5, 3});
    for (const Edge& e : r.edges()) {
      if (p[e.u] == p[e.v]) CHECK(r.opinion(e.u) == r.opinion(e.v));
    }
    CHECK(score_partition(r, scale_weights(r, census(r)), p).p_within == 1.0);
  }
  SUBCASE("exact dominant count per community") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto r = relabel(g, p, {0.7, 3, seed});
      for (const auto& members : p.members()) {
        std::vector<std::size_t> counts(3, 0);
        for (NodeIndex n : members) ++counts[r.opinion(n).value];
        // 7 of 10 carry the dominant opinion; the other 3 can coincide with
        // each other but never reach the dominant count.
        CHECK(*std::max_element(counts.begin(), counts.end()) == 7);
      }
    }
  }
  SUBCASE("deterministic per seed") {
    const auto a = relabel(g, p, {0.5, 3, 9});
    const auto b = relabel(g, p, {0.5, 3, 9});
    CHECK(std::equal(a.opinions().begin(), a.opinions().end(), b.opinions().begin()));
  }
  SUBCASE("invalid configuration") {
    CHECK_THROWS_AS(relabel(g, p, {0.5, 1, 0}), InputError);
    CHECK_THROWS_AS(relabel(g, p, {0.0, 2, 0}), InputError);
    CHECK_THROWS_AS(relabel(g, p, {1.5, 2, 0}), InputError);
  }
}

TEST_CASE("relabel draws are uniform") {
  // One 10-node community; dominant opinion choice over 1000 seeds.
  const auto planted = generate_sbm({1, 10, 1.0, 0.0, 0});
  const auto& g = planted.graph;
  const auto& p = planted.blocks;

  std::vector<double> dominant(2, 0.0);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto r = relabel(g, p, {0.5, 2, seed});
    std::size_t zeros = 0;
    for (Opinion o : r.opinions()) zeros += o.value == 0;
    CHECK(zeros == 5);
    // With 5/5 either opinion could be dominant; count node 0's label as a
    // fair coin over the dominant draw and member choice.
    dominant[r.opinion(0).value] += 1.0;
  }
  CHECK(chi_square(dominant) < kChi2Df1);

  // Non-dominant members spread uniformly over the other opinions: with 4
  // opinions and dom_ratio 0.3, 7 of 10 nodes draw from 3 opinions. Count
  // draws relative to the dominant opinion (offset 1..3).
  std::vector<double> offsets(3, 0.0);
  std::vector<double> dominant4(4, 0.0);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto r = relabel(g, p, {0.3, 4, seed});
    std::vector<std::size_t> counts(4, 0);
    for (Opinion o : r.opinions()) ++counts[o.value];
    // The dominant opinion holds >= 3 nodes; identify it by replaying the
    // first draw of the generator.
    Rng replay(seed);
    const auto x = static_cast<std::uint32_t>(replay.below(4));
    CHECK(counts[x] >= 3);
    dominant4[x] += 1.0;
    for (Opinion o : r.opinions()) {
      if (o.value != x) offsets[(o.value + 4 - x) % 4 - 1] += 1.0;
    }
  }
  CHECK(chi_square(dominant4) < kChi2Df3);
  CHECK(chi_square(offsets) < 13.816);  // df = 2
}

TEST_CASE("generate_sbm") {
  SUBCASE("p_out 0 gives disconnected blocks") {
    const auto pg = generate_sbm({2, 8, 0.5, 0.0, 1});
    for (const Edge& e : pg.graph.edges()) CHECK(pg.blocks[e.u] == pg.blocks[e.v]);
    CHECK(pg.graph.node_count() == 16);
  }
  SUBCASE("p_in 1 gives cliques") {
    const auto pg = generate_sbm({2, 5, 1.0, 0.0, 1});
    CHECK(pg.graph.edge_count() == 20);
    for (Opinion o : pg.graph.opinions()) CHECK(o.value == 0);
    CHECK(pg.blocks.community_count() == 2);
    CHECK(pg.blocks[0] == pg.blocks[4]);
    CHECK(pg.blocks[5] != pg.blocks[4]);
  }
  SUBCASE("invalid configuration") {
    CHECK_THROWS_AS(generate_sbm({0, 5, 0.5, 0.1, 0}), InputError);
    CHECK_THROWS_AS(generate_sbm({2, 0, 0.5, 0.1, 0}), InputError);
    CHECK_THROWS_AS(generate_sbm({2, 5, 0.1, 0.5, 0}), InputError);
    CHECK_THROWS_AS(generate_sbm({2, 5, 1.5, 0.1, 0}), InputError);
  }
  SUBCASE("expected degrees at 20 x 250") {
    // E[within degree] = 249 * 0.05 = 12.45, E[cross degree] = 4750 * 0.001 = 4.75.
    double within = 0.0, cross = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto pg = generate_sbm({20, 250, 0.05, 0.001, seed});
      for (const Edge& e : pg.graph.edges()) (pg.blocks[e.u] == pg.blocks[e.v] ? within : cross) += 2.0;
    }
    within /= 10.0 * 5000.0;
    cross /= 10.0 * 5000.0;
    CHECK(within == doctest::Approx(12.45).epsilon(0.10));
    CHECK(cross == doctest::Approx(4.75).epsilon(0.10));
  }
}

TEST_CASE("spearman") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  CHECK(spearman(x, std::vector<double>{2, 4, 6, 8, 10}) == doctest::Approx(1.0));
  CHECK(spearman(x, std::vector<double>{5, 4, 3, 2, 1}) == doctest::Approx(-1.0));
  // Ties use average ranks: y ranks {1.5, 1.5, 3, 4, 5}.
  CHECK(spearman(x, std::vector<double>{0, 0, 1, 2, 3}) == doctest::Approx(0.9746794344808963));
  CHECK(std::isnan(spearman(x, std::vector<double>{1, 1, 1, 1, 1})));
}

TEST_CASE("sweep") {
  const auto pg = generate_sbm({4, 30, 0.3, 0.01, 5});
  const SweepGrid grid{{2, 3}, {0.5, 1.0}};
  const auto cells = sweep(pg.graph, pg.blocks, grid, 3, 77);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].num_opinions == 2);
  CHECK(cells[0].dom_ratio == 0.5);
  CHECK(cells[3].num_opinions == 3);
  CHECK(cells[3].dom_ratio == 1.0);
  for (const auto& c : cells) CHECK(c.runs == 3);
  CHECK(cells[1].mean_p > cells[0].mean_p);

  // Cells depend only on their own coordinates and the master seed.
  const auto single = sweep(pg.graph, pg.blocks, {{3}, {1.0}}, 3, 77);
  CHECK(single[0].mean_p == cells[3].mean_p);

  std::ostringstream a, b;
  save_sweep_csv(cells, a);
  save_sweep_csv(sweep(pg.graph, pg.blocks, grid, 3, 77, 4), b);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("num_opinions,dom_ratio,mean_p,std_p,runs\n2,0.500000,", 0) == 0);

  CHECK_THROWS_AS(sweep(pg.graph, pg.blocks, {{}, {0.5}}, 1, 0), InputError);
}

TEST_CASE("sweep reference table") {
  std::istringstream in("num_opinions,dom_ratio,mean_p\n2,0.3,0.22\n10,1.0,0.79\n");
  const auto t = read_sweep_reference(in, "ref");
  CHECK(t.at({2, 300}) == 0.22);
  CHECK(t.at({10, 1000}) == 0.79);
  std::istringstream bad("2;0.3\n");
  CHECK_THROWS_AS(read_sweep_reference(bad, "ref"), InputError);
}
