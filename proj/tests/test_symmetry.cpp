#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hmis/oracles.hpp"
#include "hmis/rng.hpp"
#include "hmis/symmetry.hpp"

using namespace hmis;
using namespace hmis::sym;
using namespace hmis::oracles;

static Hypergraph fig1() {
  return Hypergraph::build(4, {{0, 1, 2}, {1, 3}, {2, 3}});
}

static Hypergraph random_hypergraph(Rng& rng, std::size_t n, std::size_t m, std::size_t dmax) {
  std::vector<std::vector<VertexId>> edges;
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t k = 2 + rng.below(std::max<std::size_t>(1, std::min(dmax, n) - 1));
    std::vector<VertexId> mem;
    while (mem.size() < k) {
      VertexId v = static_cast<VertexId>(rng.below(n));
      if (std::find(mem.begin(), mem.end(), v) == mem.end()) mem.push_back(v);
    }
    edges.push_back(mem);
  }
  return Hypergraph::build(n, edges);
}

TEST_CASE("luby 2-dim MIS") {
  Graph edgeless = Graph::build(4, {});
  auto r0 = luby_mis_2dim(edgeless, sim::Mode::congest(), 1);
  CHECK(r0.set.size() == 4);

  Graph pair = Graph::build(2, {{0, 1}});
  auto r1 = luby_mis_2dim(pair, sim::Mode::congest(), 1);
  CHECK(r1.set.size() == 1);

  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + rng.below(11);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 0; i < rng.below(2 * n); ++i) {
      VertexId u = static_cast<VertexId>(rng.below(n));
      VertexId w = static_cast<VertexId>(rng.below(n));
      if (u != w) edges.emplace_back(std::min(u, w), std::max(u, w));
    }
    Graph g = Graph::build(n, edges);
    auto res = luby_mis_2dim(g, sim::Mode::congest(), 1000 + trial);
    REQUIRE(!res.timed_out);
    // 2-dim MIS oracle via the hypergraph checker
    Hypergraph h = as_hypergraph(g);
    auto verdict = is_maximal_independent(h, res.set);
    CAPTURE(verdict.witness);
    CHECK(verdict.pass);
    CHECK(res.trace.violations == 0);
  }
}

TEST_CASE("coloring: fig-1 and edge cases") {
  SymOptions opt;
  opt.seed = 11;
  for (auto repr : {sim::Representation::server_client, sim::Representation::vertex_centric}) {
    opt.repr = repr;
    auto res = hyper_coloring(fig1(), opt);
    REQUIRE(!res.timed_out);
    CHECK(res.max_color <= 3);  // Delta = 2
    CHECK(is_valid_coloring(fig1(), res.colors, 3).pass);
  }

  Hypergraph pair = Hypergraph::build(2, {{0, 1}});
  auto res = hyper_coloring(pair, opt);
  CHECK(res.max_color <= 2);
  CHECK(res.colors[0] != res.colors[1]);

  Hypergraph singleton = Hypergraph::build(2, {{0}});
  CHECK_THROWS_AS(hyper_coloring(singleton, opt), Error);
}

TEST_CASE("coloring: random instances stay within Delta+1") {
  Rng rng(66);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng.below(11);
    Hypergraph h = random_hypergraph(rng, n, 1 + rng.below(12), 4);
    SymOptions opt;
    opt.repr = trial % 2 == 0 ? sim::Representation::server_client
                              : sim::Representation::vertex_centric;
    opt.seed = 2000 + trial;
    auto res = hyper_coloring(h, opt);
    REQUIRE(!res.timed_out);
    std::uint32_t delta = h.stats().max_degree;
    CHECK(res.max_color <= delta + 1);
    auto verdict = is_valid_coloring(h, res.colors, delta + 1);
    CAPTURE(verdict.witness);
    CHECK(verdict.pass);
    if (opt.mode.regime == sim::Regime::congest) CHECK(res.trace.violations == 0);
  }
}

TEST_CASE("matching: fig-1 picks exactly one edge") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto res = maximal_matching(fig1(), sim::Mode::congest(), seed);
    REQUIRE(!res.timed_out);
    CHECK(res.chosen.size() == 1);  // the line graph is a triangle
    CHECK(is_maximal_matching(fig1(), res.chosen).pass);
  }
}

TEST_CASE("matching: disjoint edges all chosen") {
  Hypergraph h = Hypergraph::build(6, {{0, 1}, {2, 3}, {4, 5}});
  auto res = maximal_matching(h, sim::Mode::congest(), 5);
  REQUIRE(!res.timed_out);
  CHECK(res.chosen.size() == 3);
}

TEST_CASE("matching: random instances verify") {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng.below(11);
    Hypergraph h = random_hypergraph(rng, n, 1 + rng.below(12), 4);
    auto res = maximal_matching(h, sim::Mode::congest(), 3000 + trial);
    REQUIRE(!res.timed_out);
    auto verdict = is_maximal_matching(h, res.chosen);
    CAPTURE(verdict.witness);
    CHECK(verdict.pass);
    CHECK(res.trace.violations == 0);
  }
}

TEST_CASE("clique: fig-1 gives {u1,u2,u3}") {
  for (auto repr : {sim::Representation::server_client, sim::Representation::vertex_centric}) {
    SymOptions opt;
    opt.repr = repr;
    opt.seed = 4;
    auto res = maximal_clique(fig1(), opt);
    REQUIRE(!res.timed_out);
    CHECK(res.clique == std::vector<VertexId>{0, 1, 2});
  }
}

TEST_CASE("clique: complete server graph returns everything") {
  Hypergraph h = Hypergraph::build(5, {{0, 1, 2, 3, 4}});
  SymOptions opt;
  opt.seed = 9;
  auto res = maximal_clique(h, opt);
  REQUIRE(!res.timed_out);
  CHECK(res.clique.size() == 5);
}

TEST_CASE("clique: random connected instances verify") {
  Rng rng(88);
  int done = 0;
  for (int trial = 0; done < 25 && trial < 200; ++trial) {
    std::size_t n = 2 + rng.below(10);
    Hypergraph h = random_hypergraph(rng, n, 1 + rng.below(12), 4);
    ServerGraph sg = server_graph(h);
    Graph as_g = Graph::build(sg.n, sg.edges);
    if (!as_g.connected()) continue;
    done += 1;
    SymOptions opt;
    opt.repr = trial % 2 == 0 ? sim::Representation::server_client
                              : sim::Representation::vertex_centric;
    opt.seed = 4000 + trial;
    auto res = maximal_clique(h, opt);
    REQUIRE(!res.timed_out);
    auto verdict = is_maximal_clique(sg, res.clique);
    CAPTURE(verdict.witness);
    CHECK(verdict.pass);
  }
  CHECK(done == 25);
}
