#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hmis/graph_apps.hpp"
#include "hmis/oracles.hpp"
#include "hmis/rng.hpp"

using namespace hmis;
using namespace hmis::apps;
using namespace hmis::oracles;

static Graph random_connected_graph(Rng& rng, std::size_t n, std::size_t extra) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < n; ++v) {
    edges.emplace_back(static_cast<VertexId>(rng.below(v)), v);
  }
  for (std::size_t i = 0; i < extra; ++i) {
    VertexId u = static_cast<VertexId>(rng.below(n));
    VertexId w = static_cast<VertexId>(rng.below(n));
    if (u != w) edges.emplace_back(std::min(u, w), std::max(u, w));
  }
  return Graph::build(n, edges);
}

static DomOptions options(std::uint64_t seed) {
  DomOptions o;
  o.engine = engines::parse_engine("kuw-sqrt");
  o.mode = sim::Mode::congest();
  o.seed = seed;
  return o;
}

TEST_CASE("rmds: path with endpoints restricted") {
  Graph path3 = Graph::build(3, {{0, 1}, {1, 2}});
  std::vector<bool> r = {true, false, true};
  auto res = rmds(path3, r, options(3));
  REQUIRE(!res.precondition_failed);
  REQUIRE(!res.timed_out);
  CHECK(res.set == std::vector<VertexId>{0, 2});
}

TEST_CASE("rmds: non-dominating restriction rejected") {
  Graph path5 = Graph::build(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  std::vector<bool> r = {true, false, false, false, false};
  auto res = rmds(path5, r, options(3));
  CHECK(res.precondition_failed);
}

TEST_CASE("rmds with R=V is a minimal dominating set") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng.below(11);
    Graph g = random_connected_graph(rng, n, rng.below(8));
    std::vector<bool> r(n, true);
    auto res = rmds(g, r, options(100 + trial));
    REQUIRE(!res.timed_out);
    auto verdict = is_minimal_dominating(g, res.set);
    CAPTURE(verdict.witness);
    CHECK(verdict.pass);
  }
}

TEST_CASE("rmds: random dominating restrictions") {
  Rng rng(18);
  int done = 0;
  for (int trial = 0; done < 30 && trial < 200; ++trial) {
    std::size_t n = 2 + rng.below(11);
    Graph g = random_connected_graph(rng, n, rng.below(8));
    std::vector<bool> r(n, false);
    for (VertexId v = 0; v < n; ++v) r[v] = rng.bernoulli(0.6);
    std::vector<VertexId> rl;
    for (VertexId v = 0; v < n; ++v) {
      if (r[v]) rl.push_back(v);
    }
    if (!is_dominating(g, rl)) continue;
    done += 1;
    auto res = rmds(g, r, options(500 + trial));
    REQUIRE(!res.timed_out);
    // output within R, dominating, and minimal
    for (VertexId v : res.set) CHECK(r[v]);
    auto verdict = is_minimal_dominating(g, res.set);
    CAPTURE(verdict.witness);
    CHECK(verdict.pass);
  }
  CHECK(done == 30);
}

TEST_CASE("bmds: outputs are minimal dominating sets") {
  Rng rng(19);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 2 + rng.below(12);
    Graph g = random_connected_graph(rng, n, rng.below(10));
    auto res = bmds(g, options(900 + trial));
    REQUIRE(!res.precondition_failed);
    REQUIRE(!res.timed_out);
    auto verdict = is_minimal_dominating(g, res.set);
    CAPTURE(verdict.witness);
    CHECK(verdict.pass);
  }
}

TEST_CASE("bmds: star keeps the induced average degree flat") {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < 21; ++v) edges.emplace_back(0, v);
  Graph star = Graph::build(21, edges);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto res = bmds(star, options(seed));
    REQUIRE(!res.timed_out);
    CHECK(is_minimal_dominating(star, res.set).pass);
    CHECK(res.output_avg_degree.value() <= 1.2);
  }
}

TEST_CASE("mcds: path of five") {
  Graph path5 = Graph::build(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto res = mcds(path5, options(7));
  REQUIRE(!res.timed_out);
  CAPTURE(res.anomaly);
  CHECK(res.level_violations.empty());
  CHECK(res.set == std::vector<VertexId>{1, 2, 3});
  CHECK(is_mcds(path5, res.set).pass);
}

TEST_CASE("mcds: star collapses to the center") {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < 9; ++v) edges.emplace_back(0, v);
  Graph star = Graph::build(9, edges);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto res = mcds(star, options(seed));
    REQUIRE(!res.timed_out);
    CHECK(res.set == std::vector<VertexId>{0});
  }
}

TEST_CASE("mcds: disconnected input rejected, singleton trivial") {
  Graph disc = Graph::build(4, {{0, 1}, {2, 3}});
  CHECK(mcds(disc, options(1)).precondition_failed);
  Graph single = Graph::build(1, {});
  auto res = mcds(single, options(1));
  CHECK(res.set == std::vector<VertexId>{0});
}

TEST_CASE("mcds: random connected graphs satisfy the oracle") {
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 2 + rng.below(14);
    Graph g = random_connected_graph(rng, n, rng.below(10));
    auto res = mcds(g, options(1700 + trial));
    REQUIRE(!res.timed_out);
    CAPTURE(n);
    CAPTURE(res.anomaly);
    CHECK(res.level_violations.empty());
    auto verdict = is_mcds(g, res.set);
    CAPTURE(verdict.witness);
    CHECK(verdict.pass);
  }
}
