#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hmis/generators.hpp"

using namespace hmis;
using namespace hmis::gen;

TEST_CASE("random hypergraph generator is seed-deterministic") {
  Hypergraph a = random_hypergraph(12, 20, 4, 99);
  Hypergraph b = random_hypergraph(12, 20, 4, 99);
  CHECK(a == b);
  Hypergraph c = random_hypergraph(12, 20, 4, 100);
  CHECK(!(a == c));
  CHECK(serialize(a) == serialize(b));
  for (const auto& e : a.edges()) {
    CHECK(e.size() >= 2);
    CHECK(e.size() <= 4);
  }
  CHECK_THROWS_AS(random_hypergraph(3, 5, 8, 1), Error);  // edge size > n
}

TEST_CASE("star generator") {
  Graph s = star(5);
  CHECK(s.degree(0) == 4);
  for (VertexId v = 1; v < 5; ++v) CHECK(s.degree(v) == 1);
}

TEST_CASE("bridge ring structure") {
  // reproduces the 12-vertex instance: bridges every 3 positions
  auto br = bridge_ring(12, 1);
  CHECK(br.graph.n == 12);
  CHECK(br.d == 3);
  CHECK(br.bridges == std::vector<VertexId>{0, 3, 6, 9});
  for (VertexId v = 0; v < 12; ++v) {
    bool is_bridge = v % 3 == 0;
    if (is_bridge) {
      CHECK(br.graph.degree(v) > 2);
      CHECK(br.graph.degree(v) == 2 * br.d);
    } else {
      CHECK(br.graph.degree(v) == 2);
    }
  }

  // remainder vertices are discarded
  auto br2 = bridge_ring(45, 2);
  CHECK(br2.graph.n == 40);  // d=5, n'=4*5*2
  CHECK(br2.discarded == 5);
  for (VertexId v = 0; v < br2.graph.n; ++v) {
    if (v % br2.d == 0) {
      CHECK(br2.graph.degree(v) > 2);
    } else {
      CHECK(br2.graph.degree(v) == 2);
    }
  }

  CHECK_THROWS_AS(bridge_ring(12, 2), Error);  // d would be 1
}

TEST_CASE("scs subdivision counts") {
  Graph tri = Graph::build(3, {{0, 1}, {1, 2}, {0, 2}});
  std::vector<std::pair<VertexId, VertexId>> path = {{0, 1}, {1, 2}};
  auto inst = scs_subdivision(tri, path);
  CHECK(inst.outer.size() == 5);  // |V(G)| + |E(H)| = 3 + 2
  CHECK(inst.subdividers_h.size() == 2);
  CHECK(inst.subdividers_other.size() == 1);
  CHECK(inst.subdivided.n == 3 + 3 + 5);
  CHECK_THROWS_AS(scs_subdivision(tri, {{0, 0}}), Error);
}

TEST_CASE("scs reduction check on the known cases") {
  Graph tri = Graph::build(3, {{0, 1}, {1, 2}, {0, 2}});

  // spanning path: every MCDS avoids the non-H subdivider
  std::vector<std::pair<VertexId, VertexId>> path = {{0, 1}, {1, 2}};
  CHECK(check_scs_reduction(tri, path).pass);

  // one edge: not spanning, some MCDS uses a non-H subdivider
  std::vector<std::pair<VertexId, VertexId>> one = {{0, 1}};
  CHECK(check_scs_reduction(tri, one).pass);

  // G = single edge, H = G
  Graph pair = Graph::build(2, {{0, 1}});
  std::vector<std::pair<VertexId, VertexId>> all = {{0, 1}};
  CHECK(check_scs_reduction(pair, all).pass);

  CHECK_THROWS_AS(check_scs_reduction(Graph::build(11, {}), {}), Error);
}
