#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>

#include "hmis/netsim.hpp"
#include "hmis/programs.hpp"

using namespace hmis;
using namespace hmis::sim;

static Hypergraph fig1() {
  return Hypergraph::build(4, {{0, 1, 2}, {1, 3}, {2, 3}});
}

namespace {

class HaltNow final : public Program {
 public:
  void init(NodeApi& api) override { api.halt(); }
  void step(NodeApi&, std::uint32_t, const Inbox&) override {}
};

class OneShotBroadcast final : public Program {
 public:
  void init(NodeApi& api) override {
    for (const auto& le : api.links()) api.send(le.link, {api.id()});
  }
  void step(NodeApi& api, std::uint32_t, const Inbox& inbox) override {
    received = inbox.size();
    api.output() = {static_cast<std::int64_t>(received)};
    api.halt();
  }
  std::size_t received = 0;
};

class Blaster final : public Program {
 public:
  void init(NodeApi& api) override {
    // 9 words in one round: over the default CONGEST budget of 4 words
    for (const auto& le : api.links()) {
      api.send(le.link, std::vector<Word>(9, 7));
    }
  }
  void step(NodeApi& api, std::uint32_t, const Inbox&) override { api.halt(); }
};

}  // namespace

TEST_CASE("topology construction") {
  Hypergraph h = fig1();
  Topology sc = Topology::from_hypergraph(h, Representation::server_client);
  CHECK(sc.num_nodes() == 7);
  CHECK(sc.num_links() == 7);
  CHECK(sc.role(0) == Role::server);
  CHECK(sc.role(4) == Role::client);

  Topology vc = Topology::from_hypergraph(h, Representation::vertex_centric);
  CHECK(vc.num_nodes() == 4);
  CHECK(vc.num_links() == 5);

  Hypergraph lonely = Hypergraph::build(3, {});
  Topology iso = Topology::from_hypergraph(lonely, Representation::vertex_centric);
  CHECK(iso.num_nodes() == 3);
  CHECK(iso.num_links() == 0);
}

TEST_CASE("halt immediately yields zero rounds and messages") {
  Topology t = Topology::from_hypergraph(fig1(), Representation::server_client);
  RunTrace tr = run(t, [](NodeId, const Topology&) { return std::make_unique<HaltNow>(); },
                    Mode::congest(), 1);
  CHECK(tr.rounds == 0);
  CHECK(tr.messages == 0);
  CHECK(tr.all_halted);
}

TEST_CASE("one-shot broadcast delivers 2x links directed messages in round 1") {
  Topology t = Topology::from_hypergraph(fig1(), Representation::server_client);
  RunTrace tr = run(t, [](NodeId, const Topology&) { return std::make_unique<OneShotBroadcast>(); },
                    Mode::congest(), 1);
  CHECK(tr.messages == 14);
  CHECK(tr.rounds == 1);
  CHECK(tr.violations == 0);
}

TEST_CASE("determinism: same seed, identical traces") {
  Topology t = Topology::from_hypergraph(fig1(), Representation::vertex_centric);
  auto factory = [](NodeId, const Topology&) { return std::make_unique<OneShotBroadcast>(); };
  RunTrace a = run(t, factory, Mode::congest(), 99);
  RunTrace b = run(t, factory, Mode::congest(), 99);
  CHECK(a.rounds == b.rounds);
  CHECK(a.messages == b.messages);
  CHECK(a.outputs == b.outputs);
}

TEST_CASE("congest budget violations are flagged or thrown") {
  Topology t = Topology::from_hypergraph(fig1(), Representation::vertex_centric);
  auto factory = [](NodeId, const Topology&) { return std::make_unique<Blaster>(); };
  RunTrace tr = run(t, factory, Mode::congest(), 1);
  CHECK(tr.violations > 0);
  CHECK(tr.max_payload_bits > 4 * word_bits(t.id_space()));

  Mode hard = Mode::congest(4, true);
  CHECK_THROWS_AS(run(t, factory, hard, 1), Error);

  RunTrace loc = run(t, factory, Mode::local(), 1);
  CHECK(loc.violations == 0);
}

TEST_CASE("leader election by max-id flooding") {
  // 5-cycle
  Graph cyc = Graph::build(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  Topology t = Topology::from_graph(cyc);
  Session s(t, Mode::congest(), 7);
  auto lr = lib::elect_leader(s);
  CHECK(lr.agreed);
  CHECK(lr.leader == 4);

  Graph single = Graph::build(1, {});
  Topology t1 = Topology::from_graph(single);
  Session s1(t1, Mode::congest(), 7);
  auto lr1 = lib::elect_leader(s1);
  CHECK(lr1.agreed);
  CHECK(lr1.leader == 0);

  Graph path3 = Graph::build(3, {{0, 1}, {1, 2}});
  Topology t3 = Topology::from_graph(path3);
  Session s3(t3, Mode::congest(), 7);
  CHECK(lib::elect_leader(s3).leader == 2);

  Graph disc = Graph::build(4, {{0, 1}, {2, 3}});
  Topology td = Topology::from_graph(disc);
  Session sd(td, Mode::congest(), 7);
  CHECK(!lib::elect_leader(sd).agreed);
}

TEST_CASE("bfs tree levels, parents, and max level") {
  Graph path3 = Graph::build(3, {{0, 1}, {1, 2}});
  Topology t = Topology::from_graph(path3);
  Session s(t, Mode::congest(), 3);
  auto tree = lib::bfs_tree(s, 0);
  CHECK(tree.level == std::vector<std::int32_t>{0, 1, 2});
  CHECK(tree.max_level == 2);
  CHECK(tree.all_reached);

  Graph star = Graph::build(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  Topology ts = Topology::from_graph(star);
  Session ss(ts, Mode::congest(), 3);
  auto tstar = lib::bfs_tree(ss, 0);
  for (VertexId v = 1; v < 5; ++v) CHECK(tstar.level[v] == 1);
  CHECK(tstar.max_level == 1);

  Graph cyc4 = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Topology tc = Topology::from_graph(cyc4);
  Session sc(tc, Mode::congest(), 3);
  auto tcyc = lib::bfs_tree(sc, 0);
  std::vector<std::int32_t> expect = {0, 1, 2, 1};
  CHECK(tcyc.level == expect);
  CHECK(tcyc.max_level == 2);

  // BFS levels equal centralized shortest paths on random graphs
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng.below(12);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId v = 1; v < n; ++v) {
      edges.emplace_back(static_cast<VertexId>(rng.below(v)), v);  // spanning
    }
    for (std::size_t extra = 0; extra < rng.below(8); ++extra) {
      VertexId u = static_cast<VertexId>(rng.below(n));
      VertexId w = static_cast<VertexId>(rng.below(n));
      if (u != w) edges.emplace_back(std::min(u, w), std::max(u, w));
    }
    Graph g = Graph::build(n, edges);
    Topology tt = Topology::from_graph(g);
    Session st(tt, Mode::congest(), trial);
    auto tr = lib::bfs_tree(st, 0);
    // centralized BFS
    std::vector<std::int32_t> dist(n, -1);
    std::queue<VertexId> q;
    q.push(0);
    dist[0] = 0;
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId w : g.adj[u]) {
        if (dist[w] < 0) { dist[w] = dist[u] + 1; q.push(w); }
      }
    }
    CHECK(tr.level == dist);
  }
}

TEST_CASE("converge and broadcast") {
  Graph star = Graph::build(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  Topology t = Topology::from_graph(star);
  Session s(t, Mode::congest(), 11);
  auto tree = lib::bfs_tree(s, 0);

  std::vector<std::vector<Word>> degrees;
  for (VertexId v = 0; v < 6; ++v) degrees.push_back({star.degree(v)});
  auto sum = lib::converge(s, tree, degrees,
                           [](const std::vector<Word>& a, const std::vector<Word>& b) {
                             return std::vector<Word>{a[0] + b[0]};
                           });
  CHECK(sum[0] == 10);  // 2*(n-1)

  Graph path3 = Graph::build(3, {{0, 1}, {1, 2}});
  Topology tp = Topology::from_graph(path3);
  Session sp(tp, Mode::congest(), 11);
  auto ptree = lib::bfs_tree(sp, 1);
  std::vector<std::vector<Word>> vals = {{3}, {9}, {1}};
  auto mx = lib::converge(sp, ptree, vals,
                          [](const std::vector<Word>& a, const std::vector<Word>& b) {
                            return std::vector<Word>{std::max(a[0], b[0])};
                          });
  CHECK(mx[0] == 9);

  // Fig-1 server graph: average degree 10/4
  ServerGraph sg = server_graph(fig1());
  Graph gg = Graph::build(sg.n, sg.edges);
  Topology tg = Topology::from_graph(gg);
  Session sgs(tg, Mode::congest(), 2);
  auto gtree = lib::bfs_tree(sgs, 0);
  std::vector<std::vector<Word>> dv;
  for (VertexId v = 0; v < gg.n; ++v) dv.push_back({gg.degree(v)});
  auto dsum = lib::converge(sgs, gtree, dv,
                            [](const std::vector<Word>& a, const std::vector<Word>& b) {
                              return std::vector<Word>{a[0] + b[0]};
                            });
  CHECK(dsum[0] == 10);
  CHECK(gg.n == 4);

  lib::broadcast(sgs, gtree, {dsum[0]});
}

TEST_CASE("connected components by label propagation") {
  Graph path5 = Graph::build(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  Topology t = Topology::from_graph(path5);
  Session s(t, Mode::congest(), 1);
  std::vector<bool> active = {true, true, false, true, true};
  auto res = lib::connected_components(s, active);
  CHECK(res.label == std::vector<std::int64_t>{0, 0, -1, 3, 3});

  std::vector<bool> none(5, false);
  Session s2(t, Mode::congest(), 1);
  auto res2 = lib::connected_components(s2, none);
  CHECK(res2.label == std::vector<std::int64_t>{-1, -1, -1, -1, -1});

  std::vector<bool> all(5, true);
  Session s3(t, Mode::congest(), 1);
  auto res3 = lib::connected_components(s3, all);
  CHECK(res3.label == std::vector<std::int64_t>{0, 0, 0, 0, 0});
}

TEST_CASE("synchrony: payload sent in round r arrives in round r+1") {
  struct Probe final : public Program {
    void init(NodeApi& api) override {
      if (api.id() == 0) api.send(api.links()[0].link, {42});
    }
    void step(NodeApi& api, std::uint32_t round, const Inbox& inbox) override {
      if (api.id() == 1 && !inbox.empty()) {
        api.output() = {static_cast<std::int64_t>(round)};
        api.halt();
      }
      if (api.id() == 0) api.halt();
    }
  };
  Graph pair = Graph::build(2, {{0, 1}});
  Topology t = Topology::from_graph(pair);
  RunTrace tr = run(t, [](NodeId, const Topology&) { return std::make_unique<Probe>(); },
                    Mode::congest(), 1);
  CHECK(tr.outputs[1] == std::vector<std::int64_t>{1});
}
