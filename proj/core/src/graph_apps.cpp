#include "hmis/graph_apps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "hmis/oracles.hpp"
#include "hmis/programs.hpp"

namespace hmis::apps {

using namespace hmis::sim;

namespace {

// Each vertex of V becomes a client with hyperedge N[v] cap R over the
// R-indexed servers.
Hypergraph restriction_hypergraph(const Graph& g, const std::vector<bool>& restricted,
                                  std::vector<VertexId>& r_members) {
  r_members.clear();
  std::vector<std::int64_t> rank(g.n, -1);
  for (VertexId v = 0; v < g.n; ++v) {
    if (restricted[v]) {
      rank[v] = static_cast<std::int64_t>(r_members.size());
      r_members.push_back(v);
    }
  }
  std::vector<std::vector<VertexId>> edges;
  edges.reserve(g.n);
  for (VertexId v = 0; v < g.n; ++v) {
    std::vector<VertexId> e;
    if (restricted[v]) e.push_back(static_cast<VertexId>(rank[v]));
    for (VertexId u : g.adj[v]) {
      if (restricted[u]) e.push_back(static_cast<VertexId>(rank[u]));
    }
    edges.push_back(std::move(e));
  }
  return Hypergraph::build(r_members.size(), std::move(edges));
}

Rational induced_avg_degree(const Graph& g, const std::vector<VertexId>& set) {
  if (set.empty()) return Rational();
  std::vector<bool> in(g.n, false);
  for (VertexId v : set) in[v] = true;
  std::int64_t twice_edges = 0;
  for (auto [u, v] : g.edges) {
    if (in[u] && in[v]) twice_edges += 2;
  }
  return Rational(twice_edges, static_cast<std::int64_t>(set.size()));
}

// degree-threshold marking step of the balanced-MDS algorithm; one round of
// mark publication plus the backstop rule
class BmdsMarkProgram final : public Program {
 public:
  BmdsMarkProgram(std::uint64_t degree_sum, std::size_t n, const Graph* g)
      : degree_sum_(degree_sum), n_(n), g_(g) {}

  void init(NodeApi& api) override {
    double delta = static_cast<double>(degree_sum_) / static_cast<double>(n_);
    bool fallback = delta <= std::exp(1.0);
    double t = 0.0;
    if (!fallback) {
      t = 2.0 * delta * std::log(delta) / std::log(std::log(delta));
      if (!(t >= std::exp(1.0))) fallback = true;
    }
    std::size_t deg = g_->degree(api.id());
    if (fallback) {
      marked_ = true;
    } else if (!degree_above_twice(deg, degree_sum_, n_)) {
      marked_ = true;  // low-degree nodes always mark
    } else {
      marked_ = api.rng().bernoulli(std::log(t) / t);
    }
    for (const auto& le : api.links()) api.send(le.link, {marked_ ? 1u : 0u});
  }

  void step(NodeApi& api, std::uint32_t round, const Inbox& inbox) override {
    if (round == 1) {
      bool neighbor_marked = false;
      for (const auto& msg : inbox) {
        if (msg.words.at(0) == 1) neighbor_marked = true;
      }
      if (!marked_ && !neighbor_marked) marked_ = true;  // backstop: stay dominating
      api.output() = {marked_ ? 1 : 0};
      api.halt();
    }
  }

 private:
  std::uint64_t degree_sum_;
  std::size_t n_;
  const Graph* g_;
  bool marked_ = false;
};

engines::MisOptions engine_options(const DomOptions& opt) {
  engines::MisOptions mo;
  mo.engine = opt.engine;
  mo.mode = opt.mode;
  mo.seed = opt.seed;
  mo.repr = Representation::server_client;
  return mo;
}

}  // namespace

DomResult rmds(const Graph& g, const std::vector<bool>& restricted, const DomOptions& opt) {
  DomResult res;
  std::vector<VertexId> r_list;
  for (VertexId v = 0; v < g.n; ++v) {
    if (restricted[v]) r_list.push_back(v);
  }
  if (!oracles::is_dominating(g, r_list)) {
    res.precondition_failed = true;
    res.anomaly = "restricted set does not dominate the graph";
    return res;
  }

  std::vector<VertexId> r_members;
  Hypergraph h = restriction_hypergraph(g, restricted, r_members);
  engines::MisResult mis = engines::solve_mis(h, engine_options(opt));
  res.trace.accumulate(mis.trace);
  res.timed_out = mis.timed_out;
  res.anomaly = mis.anomaly;
  for (VertexId i = 0; i < r_members.size(); ++i) {
    if (!mis.in_set[i]) res.set.push_back(r_members[i]);
  }
  return res;
}

DomResult bmds(const Graph& g, const DomOptions& opt) {
  DomResult res;
  if (g.n == 0) return res;
  if (!g.connected()) {
    res.precondition_failed = true;
    res.anomaly = "bmds requires a connected graph";
    return res;
  }

  Topology topo = Topology::from_graph(g);
  Session session(topo, opt.mode, opt.seed);

  // average degree by leader election, BFS and convergecast
  auto leader = lib::elect_leader(session);
  auto tree = lib::bfs_tree(session, leader.leader);
  std::vector<std::vector<Word>> degs;
  for (VertexId v = 0; v < g.n; ++v) degs.push_back({g.degree(v)});
  auto sum = lib::converge(session, tree, degs,
                           [](const std::vector<Word>& a, const std::vector<Word>& b) {
                             return std::vector<Word>{a[0] + b[0]};
                           });
  lib::broadcast(session, tree, {sum[0]});
  std::uint64_t degree_sum = sum[0];

  RunTrace mark_trace = session.run_phase([&](NodeId, const Topology&) {
    return std::make_unique<BmdsMarkProgram>(degree_sum, g.n, &g);
  });
  std::vector<bool> marked(g.n, false);
  for (VertexId v = 0; v < g.n; ++v) {
    marked[v] = !mark_trace.outputs[v].empty() && mark_trace.outputs[v][0] == 1;
  }
  res.trace.accumulate(session.total());

  std::vector<VertexId> marked_list;
  for (VertexId v = 0; v < g.n; ++v) {
    if (marked[v]) marked_list.push_back(v);
  }
  if (!oracles::is_dominating(g, marked_list)) {
    res.anomaly = "marked set fails to dominate";  // step 3 should prevent this
    res.timed_out = true;
    return res;
  }

  DomOptions inner = opt;
  inner.seed = opt.seed + 0x626d6473ULL;
  DomResult sub = rmds(g, marked, inner);
  res.trace.accumulate(sub.trace);
  res.timed_out = res.timed_out || sub.timed_out;
  if (res.anomaly.empty()) res.anomaly = sub.anomaly;
  res.set = std::move(sub.set);

  res.output_avg_degree = induced_avg_degree(g, res.set);
  double delta = static_cast<double>(degree_sum) / static_cast<double>(g.n);
  if (delta > std::exp(1.0) && std::log(std::log(delta)) > 0) {
    res.balance_bound = delta * std::log(delta) / std::log(std::log(delta));
  } else {
    res.balance_bound = delta;
  }
  return res;
}

namespace {

struct LevelState {
  std::vector<bool> in_set;
  std::vector<std::int32_t> level;
};

// centralized per-iteration invariant check, recorded as data
void check_level_invariant(const Graph& g, const LevelState& st, std::int32_t i,
                           std::vector<std::string>& violations) {
  // every vertex on levels > i is dominated
  for (VertexId v = 0; v < g.n; ++v) {
    if (st.level[v] <= i) continue;
    bool dom = st.in_set[v];
    for (VertexId u : g.adj[v]) {
      if (st.in_set[u]) { dom = true; break; }
    }
    if (!dom) {
      violations.push_back("level " + std::to_string(st.level[v]) + " vertex " +
                           std::to_string(v) + " undominated after level " + std::to_string(i));
    }
  }
  // every component of the current set touches level i-1
  std::vector<bool> seen(g.n, false);
  for (VertexId v = 0; v < g.n; ++v) {
    if (!st.in_set[v] || seen[v]) continue;
    std::int32_t min_level = st.level[v];
    std::vector<VertexId> stack{v};
    seen[v] = true;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      min_level = std::min(min_level, st.level[u]);
      for (VertexId w : g.adj[u]) {
        if (st.in_set[w] && !seen[w]) { seen[w] = true; stack.push_back(w); }
      }
    }
    if (min_level > i - 1) {
      violations.push_back("set component at levels >= " + std::to_string(min_level) +
                           " does not reach level " + std::to_string(i - 1));
    }
  }
}

}  // namespace

DomResult mcds(const Graph& g, const DomOptions& opt) {
  DomResult res;
  if (g.n == 0) return res;
  if (!g.connected()) {
    res.precondition_failed = true;
    res.anomaly = "mcds requires a connected graph";
    return res;
  }
  if (g.n == 1) {
    res.set = {0};
    return res;
  }

  Topology topo = Topology::from_graph(g);
  Session session(topo, opt.mode, opt.seed);
  auto leader = lib::elect_leader(session);
  auto tree = lib::bfs_tree(session, leader.leader);

  LevelState st;
  st.in_set.assign(g.n, false);
  st.level = tree.level;
  const std::int32_t k = static_cast<std::int32_t>(tree.max_level);

  // the mis on each level hypergraph runs through the dimension-reduction
  // wrapper so that super-node relaying stays within a logarithmic factor
  engines::EngineChoice level_engine = opt.engine;
  if (level_engine.kind != engines::EngineKind::dim_reduced) {
    level_engine.inner = level_engine.kind;
    level_engine.kind = engines::EngineKind::dim_reduced;
  }

  for (std::int32_t i = k; i >= 1; --i) {
    // components of the current set, sliced at level i as super-nodes
    auto comp = lib::connected_components(session, st.in_set);
    std::map<std::int64_t, std::vector<VertexId>> slices;  // component label -> level-i slice
    for (VertexId v = 0; v < g.n; ++v) {
      if (st.in_set[v] && st.level[v] == i) slices[comp.label[v]].push_back(v);
    }

    // plain clients: level-i vertices not dominated by the current set
    std::vector<VertexId> plain;
    for (VertexId v = 0; v < g.n; ++v) {
      if (st.level[v] != i || st.in_set[v]) continue;
      bool dom = false;
      for (VertexId u : g.adj[v]) {
        if (st.in_set[u]) { dom = true; break; }
      }
      if (!dom) plain.push_back(v);
    }

    if (i == 1 && plain.empty() && slices.size() <= 1) {
      continue;  // the set is already connected and dominating at the root side
    }

    // servers: level i-1 vertices
    std::vector<VertexId> servers;
    std::vector<std::int64_t> rank(g.n, -1);
    for (VertexId v = 0; v < g.n; ++v) {
      if (st.level[v] == static_cast<std::int32_t>(i - 1)) {
        rank[v] = static_cast<std::int64_t>(servers.size());
        servers.push_back(v);
      }
    }
    std::vector<std::vector<VertexId>> hyperedges;
    std::uint32_t max_client_degree = 0;
    for (const auto& [label, slice] : slices) {
      std::set<VertexId> e;
      for (VertexId v : slice) {
        for (VertexId u : g.adj[v]) {
          if (rank[u] >= 0) e.insert(static_cast<VertexId>(rank[u]));
        }
      }
      if (!e.empty()) {
        hyperedges.emplace_back(e.begin(), e.end());
        max_client_degree = std::max<std::uint32_t>(max_client_degree, e.size());
      }
    }
    for (VertexId v : plain) {
      std::set<VertexId> e;
      for (VertexId u : g.adj[v]) {
        if (rank[u] >= 0) e.insert(static_cast<VertexId>(rank[u]));
      }
      if (!e.empty()) {
        hyperedges.emplace_back(e.begin(), e.end());
        max_client_degree = std::max<std::uint32_t>(max_client_degree, e.size());
      }
    }
    if (hyperedges.empty()) {
      check_level_invariant(g, st, i, res.level_violations);
      continue;
    }

    Hypergraph level_h = Hypergraph::build(servers.size(), std::move(hyperedges));
    engines::MisOptions mo;
    mo.engine = level_engine;
    mo.mode = opt.mode;
    mo.seed = opt.seed + 0x6d636473ULL * static_cast<std::uint64_t>(i + 1);
    mo.repr = Representation::server_client;
    engines::MisResult mis = engines::solve_mis(level_h, mo);
    res.trace.accumulate(mis.trace);
    if (mis.timed_out) {
      res.timed_out = true;
      res.anomaly = "level " + std::to_string(i) + ": " + mis.anomaly;
      return res;
    }

    // charge super-node forwarding: messages of component members detour via
    // the component leader, pipelined within the link budget
    std::uint32_t max_ecc = 0;
    for (const auto& [label, slice] : slices) {
      // BFS inside the component from its leader
      std::map<VertexId, std::uint32_t> dist;
      std::queue<VertexId> q;
      VertexId root = static_cast<VertexId>(label);
      dist[root] = 0;
      q.push(root);
      while (!q.empty()) {
        VertexId u = q.front();
        q.pop();
        for (VertexId w : g.adj[u]) {
          if (st.in_set[w] && comp.label[w] == label && !dist.count(w)) {
            dist[w] = dist[u] + 1;
            q.push(w);
          }
        }
      }
      for (VertexId v : slice) {
        if (dist.count(v)) max_ecc = std::max(max_ecc, dist[v]);
      }
    }
    std::uint64_t per_round = 2ULL * max_ecc +
                              (max_client_degree + opt.mode.word_factor - 1) /
                                  std::max<std::uint32_t>(1, opt.mode.word_factor);
    std::uint64_t extra = mis.trace.rounds * per_round;
    res.forwarding_rounds += extra;
    session.charge_extra_rounds(extra);

    for (VertexId idx = 0; idx < servers.size(); ++idx) {
      if (!mis.in_set[idx]) st.in_set[servers[idx]] = true;
    }
    check_level_invariant(g, st, i, res.level_violations);
  }

  res.trace.accumulate(session.total());
  for (VertexId v = 0; v < g.n; ++v) {
    if (st.in_set[v]) res.set.push_back(v);
  }
  if (!res.level_violations.empty() && res.anomaly.empty()) {
    res.anomaly = "level invariant violated";
  }
  return res;
}

}  // namespace hmis::apps
