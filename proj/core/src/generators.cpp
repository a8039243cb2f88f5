#include "hmis/generators.hpp"

#include <algorithm>
#include <set>

#include "hmis/rng.hpp"

namespace hmis::gen {

Hypergraph random_hypergraph(std::size_t n, std::size_t m, std::size_t dmax,
                             std::uint64_t seed) {
  if (n == 0) throw Error("random_hypergraph: n must be positive");
  if (dmax > n) throw Error("random_hypergraph: edge size bound exceeds n");
  if (dmax < 2) throw Error("random_hypergraph: dmax must be at least 2");
  Rng rng = Rng::derive(seed, {0x72616e64ULL});
  std::vector<std::vector<VertexId>> edges;
  edges.reserve(m);
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t k = 2 + rng.below(dmax - 1);  // uniform on [2, dmax]
    std::vector<VertexId> mem;
    while (mem.size() < k) {
      VertexId v = static_cast<VertexId>(rng.below(n));
      if (std::find(mem.begin(), mem.end(), v) == mem.end()) mem.push_back(v);
    }
    edges.push_back(std::move(mem));
  }
  return Hypergraph::build(n, std::move(edges));
}

Graph random_connected_graph(std::size_t n, std::size_t extra, std::uint64_t seed) {
  if (n == 0) throw Error("random_connected_graph: n must be positive");
  Rng rng = Rng::derive(seed, {0x67726170ULL});
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < n; ++v) {
    edges.emplace_back(static_cast<VertexId>(rng.below(v)), v);
  }
  for (std::size_t i = 0; i < extra; ++i) {
    VertexId u = static_cast<VertexId>(rng.below(n));
    VertexId w = static_cast<VertexId>(rng.below(n));
    if (u != w) edges.emplace_back(std::min(u, w), std::max(u, w));
  }
  return Graph::build(n, std::move(edges));
}

Graph star(std::size_t n) {
  if (n == 0) throw Error("star: n must be positive");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Graph::build(n, std::move(edges));
}

BridgeRing bridge_ring(std::size_t n, std::size_t diameter_param) {
  if (diameter_param == 0) throw Error("bridge_ring: diameter parameter must be positive");
  std::size_t d = n / (4 * diameter_param);
  if (d < 2) throw Error("bridge_ring: need n >= 8*D for bridge degree > 2");
  BridgeRing out;
  out.d = static_cast<std::uint32_t>(d);
  std::size_t n_prime = 4 * d * diameter_param;
  out.discarded = n - n_prime;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t i = 0; i < n_prime; i += d) {
    out.bridges.push_back(static_cast<VertexId>(i));
    for (std::size_t off = 1; off <= d; ++off) {
      auto arc = [&](std::size_t j) {
        VertexId a = static_cast<VertexId>(i);
        VertexId b = static_cast<VertexId>(j % n_prime);
        edges.emplace_back(std::min(a, b), std::max(a, b));
      };
      arc(i + off);
      arc(i + n_prime - off);
    }
  }
  out.graph = Graph::build(n_prime, std::move(edges));
  return out;
}

ScsInstance scs_subdivision(const Graph& g,
                            const std::vector<std::pair<VertexId, VertexId>>& h_edges) {
  ScsInstance inst;
  inst.base = g;
  for (auto [u, v] : h_edges) {
    auto e = std::minmax(u, v);
    if (!g.has_edge(e.first, e.second)) throw Error("scs_subdivision: H edge not in G");
    inst.h_edges.emplace_back(e.first, e.second);
  }
  std::sort(inst.h_edges.begin(), inst.h_edges.end());
  inst.h_edges.erase(std::unique(inst.h_edges.begin(), inst.h_edges.end()), inst.h_edges.end());

  std::vector<std::pair<VertexId, VertexId>> edges;
  VertexId next = static_cast<VertexId>(g.n);
  std::vector<VertexId> pendant_targets;
  for (VertexId v = 0; v < g.n; ++v) pendant_targets.push_back(v);
  for (auto [u, v] : g.edges) {
    VertexId b = next++;
    edges.emplace_back(u, b);
    edges.emplace_back(std::min(b, v), std::max(b, v));
    bool in_h = std::binary_search(inst.h_edges.begin(), inst.h_edges.end(),
                                   std::make_pair(u, v));
    if (in_h) {
      inst.subdividers_h.push_back(b);
      pendant_targets.push_back(b);
    } else {
      inst.subdividers_other.push_back(b);
    }
  }
  for (VertexId t : pendant_targets) {
    VertexId p = next++;
    inst.outer.push_back(p);
    edges.emplace_back(std::min(t, p), std::max(t, p));
  }
  inst.subdivided = Graph::build(next, std::move(edges));
  return inst;
}

namespace {

bool mask_dominating(const Graph& g, std::uint64_t mask) {
  for (VertexId v = 0; v < g.n; ++v) {
    if (mask & (1ULL << v)) continue;
    bool dom = false;
    for (VertexId u : g.adj[v]) {
      if (mask & (1ULL << u)) { dom = true; break; }
    }
    if (!dom) return false;
  }
  return true;
}

bool mask_connected(const Graph& g, std::uint64_t mask) {
  if (mask == 0) return true;
  VertexId start = 0;
  while (!(mask & (1ULL << start))) ++start;
  std::uint64_t seen = 1ULL << start;
  std::vector<VertexId> stack{start};
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (VertexId w : g.adj[u]) {
      std::uint64_t bit = 1ULL << w;
      if ((mask & bit) && !(seen & bit)) {
        seen |= bit;
        stack.push_back(w);
      }
    }
  }
  return seen == mask;
}

bool is_mcds_mask(const Graph& g, std::uint64_t mask) {
  if (!mask_dominating(g, mask) || !mask_connected(g, mask)) return false;
  for (VertexId v = 0; v < g.n; ++v) {
    std::uint64_t bit = 1ULL << v;
    if (!(mask & bit)) continue;
    std::uint64_t without = mask & ~bit;
    if (without != 0 && mask_dominating(g, without) && mask_connected(g, without)) return false;
  }
  return true;
}

}  // namespace

oracles::Verdict check_scs_reduction(const Graph& g,
                                     const std::vector<std::pair<VertexId, VertexId>>& h_edges) {
  if (g.n > 10) throw Error("check_scs_reduction: |V(G)| > 10 guard");
  if (!g.connected()) throw Error("check_scs_reduction: G must be connected");
  ScsInstance inst = scs_subdivision(g, h_edges);
  const Graph& gp = inst.subdivided;
  if (gp.n > 63) throw Error("check_scs_reduction: subdivided graph too large");

  // spanning connected subgraph test of (V(G), H)
  Graph hsub = Graph::build(g.n, inst.h_edges);
  bool h_spans = g.n <= 1 || hsub.connected();
  for (VertexId v = 0; v < g.n && h_spans; ++v) {
    if (g.n > 1 && hsub.degree(v) == 0) h_spans = false;
  }

  std::uint64_t other_mask = 0;
  for (VertexId b : inst.subdividers_other) other_mask |= 1ULL << b;

  bool all_avoid = true;
  std::uint64_t witness_mask = 0;
  std::size_t found = 0;
  const std::uint64_t full = (gp.n >= 64) ? ~0ULL : (1ULL << gp.n) - 1;
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    if (!is_mcds_mask(gp, mask)) continue;
    found += 1;
    if (mask & other_mask) {
      all_avoid = false;
      witness_mask = mask;
      if (!h_spans) break;  // both sides agree on "no"; stop early
    }
  }
  if (found == 0) return oracles::Verdict::fail("no MCDS found in the subdivided graph");

  if (all_avoid == h_spans) return oracles::Verdict::ok();
  if (all_avoid) {
    return oracles::Verdict::fail("H is not spanning-connected but every MCDS avoids the non-H subdividers");
  }
  std::string w = "H spans but an MCDS uses non-H subdividers:";
  for (VertexId v = 0; v < gp.n; ++v) {
    if (witness_mask & (1ULL << v)) w += " " + std::to_string(v);
  }
  return oracles::Verdict::fail(w);
}

}  // namespace hmis::gen
