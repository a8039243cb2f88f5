#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hmis/graph.hpp"
#include "hmis/hypergraph.hpp"
#include "hmis/rng.hpp"

using namespace hmis;

// The running example: 4 vertices, edges {u1,u2,u3}, {u2,u4}, {u3,u4}.
static Hypergraph fig1() {
  return Hypergraph::build(4, {{0, 1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("build normalizes and validates") {
  Hypergraph h = fig1();
  CHECK(h.num_vertices() == 4);
  CHECK(h.num_edges() == 3);

  SUBCASE("duplicate edges collapse by default") {
    Hypergraph d = Hypergraph::build(3, {{0, 1}, {1, 0}});
    CHECK(d.num_edges() == 1);
    Hypergraph kept = Hypergraph::build(3, {{0, 1}, {1, 0}}, /*keep_duplicates=*/true);
    CHECK(kept.num_edges() == 2);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(Hypergraph::build(2, {{0, 5}}), Error);
    CHECK_THROWS_AS(Hypergraph::build(2, {{}}), Error);
  }
  SUBCASE("empty family is valid") {
    Hypergraph e = Hypergraph::build(1, {});
    auto s = e.stats();
    CHECK(s.max_degree == 0);
    CHECK(s.dimension == 0);
    CHECK(s.avg_degree == Rational(0, 1));
  }
}

TEST_CASE("degrees and stats") {
  Hypergraph h = fig1();
  CHECK(h.degree(0) == 1);
  CHECK(h.degree(3) == 2);
  auto s = h.stats();
  CHECK(s.max_degree == 2);
  CHECK(s.dimension == 3);
  CHECK(s.avg_degree == Rational(7, 4));

  // triangle as 2-dim hypergraph
  Hypergraph tri = Hypergraph::build(3, {{0, 1}, {1, 2}, {0, 2}});
  auto ts = tri.stats();
  CHECK(ts.max_degree == 2);
  CHECK(ts.dimension == 2);
  CHECK(ts.avg_degree == Rational(2, 1));
}

TEST_CASE("server graph") {
  Hypergraph h = fig1();
  ServerGraph g = server_graph(h);
  std::vector<std::pair<VertexId, VertexId>> expect = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
  CHECK(g.edges == expect);

  ServerGraph tri = server_graph(Hypergraph::build(3, {{0, 1, 2}}));
  CHECK(tri.edges.size() == 3);

  ServerGraph none = server_graph(Hypergraph::build(3, {}));
  CHECK(none.edges.empty());
}

TEST_CASE("induced sub-hypergraph keeps only fully contained edges") {
  Hypergraph h = fig1();
  std::vector<VertexId> keep = {1, 2, 3};
  auto view = induced(h, keep);
  CHECK(view.kept_edges() == std::vector<EdgeId>{1, 2});

  std::vector<VertexId> all = {0, 1, 2, 3};
  CHECK(induced(h, all).kept_edges().size() == 3);

  std::vector<VertexId> none = {};
  auto empty = induced(h, none);
  CHECK(empty.kept_vertices().empty());
  CHECK(empty.kept_edges().empty());
}

TEST_CASE("parse and serialize") {
  Hypergraph h = parse_hypergraph("4 3\n3 1 2 3\n2 2 4\n2 3 4\n");
  CHECK(h == fig1());

  Hypergraph single = parse_hypergraph("1 0\n");
  CHECK(single.num_vertices() == 1);
  CHECK(single.num_edges() == 0);

  CHECK_THROWS_AS(parse_hypergraph(""), Error);
  CHECK_THROWS_AS(parse_hypergraph("2 1\n3 1 2\n"), Error);     // truncated edge
  CHECK_THROWS_AS(parse_hypergraph("2 1\n2 1 5\n"), Error);     // id out of range
  CHECK(parse_hypergraph("2 1 # comment\n\n2 1 2\n").num_edges() == 1);
}

TEST_CASE("round trip on random instances") {
  Rng rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng.below(12);
    std::size_t m = rng.below(16);
    std::vector<std::vector<VertexId>> edges;
    for (std::size_t e = 0; e < m; ++e) {
      std::size_t k = 1 + rng.below(std::min<std::size_t>(n, 5));
      std::vector<VertexId> mem;
      for (std::size_t i = 0; i < k; ++i) mem.push_back(static_cast<VertexId>(rng.below(n)));
      edges.push_back(mem);
    }
    Hypergraph h = Hypergraph::build(n, edges);
    std::string text = serialize(h);
    CHECK(parse_hypergraph(text) == h);
    CHECK(serialize(parse_hypergraph(text)) == text);
  }
}

TEST_CASE("degree sum identity") {
  Rng rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng.below(10);
    std::vector<std::vector<VertexId>> edges;
    for (std::size_t e = 0; e < rng.below(12); ++e) {
      std::vector<VertexId> mem;
      for (std::size_t i = 0; i < 1 + rng.below(4); ++i)
        mem.push_back(static_cast<VertexId>(rng.below(n)));
      edges.push_back(mem);
    }
    Hypergraph h = Hypergraph::build(n, edges);
    auto s = h.stats();
    std::uint64_t sum = 0;
    std::uint32_t dmax = 0;
    for (VertexId v = 0; v < n; ++v) {
      sum += h.degree(v);
      dmax = std::max<std::uint32_t>(dmax, h.degree(v));
    }
    CHECK(s.max_degree == dmax);
    CHECK(s.avg_degree == Rational(static_cast<std::int64_t>(sum), static_cast<std::int64_t>(n)));
    for (const auto& e : h.edges()) CHECK(e.size() <= s.dimension);
  }
}

TEST_CASE("graph parse and build") {
  Graph g = parse_graph("3 2\n1 2\n2 3\n");
  CHECK(g.n == 3);
  CHECK(g.edges.size() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.connected());
  CHECK(g.avg_degree() == Rational(4, 3));
  CHECK(parse_graph(serialize(g)).edges == g.edges);
  CHECK_THROWS_AS(parse_graph("2 1\n1 3\n"), Error);
}
