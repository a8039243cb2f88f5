#include "hmis/oracles.hpp"

#include <algorithm>

namespace hmis::oracles {

namespace {

std::vector<bool> member_mask(std::size_t n, std::span<const VertexId> set) {
  std::vector<bool> in(n, false);
  for (VertexId v : set) {
    if (v >= n) throw Error("oracle: vertex id out of range");
    in[v] = true;
  }
  return in;
}

bool edge_inside(const std::vector<VertexId>& e, const std::vector<bool>& in) {
  for (VertexId v : e) {
    if (!in[v]) return false;
  }
  return true;
}

std::string edge_str(const Hypergraph& h, EdgeId e) {
  std::string s = "edge " + std::to_string(e) + " {";
  bool first = true;
  for (VertexId v : h.edge(e)) {
    if (!first) s += ",";
    s += std::to_string(v);
    first = false;
  }
  return s + "}";
}

}  // namespace

Verdict is_independent(const Hypergraph& h, std::span<const VertexId> set) {
  auto in = member_mask(h.num_vertices(), set);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (edge_inside(h.edge(e), in)) {
      return Verdict::fail(edge_str(h, e) + " contained in set");
    }
  }
  return Verdict::ok();
}

Verdict is_maximal_independent(const Hypergraph& h, std::span<const VertexId> set) {
  auto indep = is_independent(h, set);
  if (!indep) return indep;
  auto in = member_mask(h.num_vertices(), set);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (in[v]) continue;
    in[v] = true;
    bool blocked = false;
    for (EdgeId e : h.incident(v)) {
      if (edge_inside(h.edge(e), in)) { blocked = true; break; }
    }
    in[v] = false;
    if (!blocked) {
      return Verdict::fail("vertex " + std::to_string(v) + " extends the set");
    }
  }
  return Verdict::ok();
}

Verdict is_maximal_independent_in(const Hypergraph& h, std::span<const VertexId> active,
                                  std::span<const VertexId> set) {
  SubHypergraphView view(h, std::vector<VertexId>(active.begin(), active.end()));
  auto in = member_mask(h.num_vertices(), set);
  for (VertexId v : set) {
    if (!view.keeps(v)) {
      return Verdict::fail("vertex " + std::to_string(v) + " outside the active sub-hypergraph");
    }
  }
  for (EdgeId e : view.kept_edges()) {
    if (edge_inside(h.edge(e), in)) {
      return Verdict::fail(edge_str(h, e) + " contained in set");
    }
  }
  for (VertexId v : view.kept_vertices()) {
    if (in[v]) continue;
    in[v] = true;
    bool blocked = false;
    for (EdgeId e : h.incident(v)) {
      bool kept = true;
      for (VertexId u : h.edge(e)) {
        if (!view.keeps(u)) { kept = false; break; }
      }
      if (kept && edge_inside(h.edge(e), in)) { blocked = true; break; }
    }
    in[v] = false;
    if (!blocked) {
      return Verdict::fail("vertex " + std::to_string(v) + " extends the set");
    }
  }
  return Verdict::ok();
}

std::vector<std::vector<VertexId>> enumerate_mis(const Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  if (n > 20) throw Error("enumerate_mis: n > 20 guard");
  std::vector<std::uint32_t> edge_masks;
  edge_masks.reserve(h.num_edges());
  for (const auto& e : h.edges()) {
    std::uint32_t m = 0;
    for (VertexId v : e) m |= 1u << v;
    edge_masks.push_back(m);
  }
  std::vector<std::vector<VertexId>> family;
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  for (std::uint32_t set = 0; set <= full; ++set) {
    bool indep = true;
    for (std::uint32_t em : edge_masks) {
      if ((em & set) == em) { indep = false; break; }
    }
    if (!indep) continue;
    bool maximal = true;
    for (std::uint32_t v = 0; v < n && maximal; ++v) {
      if (set & (1u << v)) continue;
      std::uint32_t ext = set | (1u << v);
      bool blocked = false;
      for (std::uint32_t em : edge_masks) {
        if ((em & ext) == em) { blocked = true; break; }
      }
      if (!blocked) maximal = false;
    }
    if (!maximal) continue;
    std::vector<VertexId> out;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (set & (1u << v)) out.push_back(v);
    }
    family.push_back(std::move(out));
    if (full == ~0u && set == full) break;
  }
  return family;
}

Verdict is_minimal_hitting_set(const Hypergraph& h, std::span<const VertexId> set) {
  auto in = member_mask(h.num_vertices(), set);
  auto hits_all = [&](const std::vector<bool>& mask) -> std::int64_t {
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      bool hit = false;
      for (VertexId v : h.edge(e)) {
        if (mask[v]) { hit = true; break; }
      }
      if (!hit) return static_cast<std::int64_t>(e);
    }
    return -1;
  };
  std::int64_t missed = hits_all(in);
  if (missed >= 0) {
    return Verdict::fail(edge_str(h, static_cast<EdgeId>(missed)) + " not hit");
  }
  for (VertexId v : set) {
    in[v] = false;
    bool still = hits_all(in) < 0;
    in[v] = true;
    if (still) {
      return Verdict::fail("vertex " + std::to_string(v) + " redundant");
    }
  }
  return Verdict::ok();
}

Verdict is_dominating(const Graph& g, std::span<const VertexId> set) {
  auto in = member_mask(g.n, set);
  for (VertexId v = 0; v < g.n; ++v) {
    if (in[v]) continue;
    bool dom = false;
    for (VertexId w : g.adj[v]) {
      if (in[w]) { dom = true; break; }
    }
    if (!dom) return Verdict::fail("vertex " + std::to_string(v) + " undominated");
  }
  return Verdict::ok();
}

Verdict is_minimal_dominating(const Graph& g, std::span<const VertexId> set) {
  auto dom = is_dominating(g, set);
  if (!dom) return dom;
  std::vector<VertexId> reduced(set.begin(), set.end());
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    std::vector<VertexId> without;
    without.reserve(reduced.size() - 1);
    for (std::size_t j = 0; j < reduced.size(); ++j) {
      if (j != i) without.push_back(reduced[j]);
    }
    if (is_dominating(g, without)) {
      return Verdict::fail("vertex " + std::to_string(reduced[i]) + " redundant");
    }
  }
  return Verdict::ok();
}

Verdict is_connected(const Graph& g, std::span<const VertexId> set) {
  if (set.size() <= 1) return Verdict::ok();
  auto in = member_mask(g.n, set);
  std::vector<bool> seen(g.n, false);
  std::vector<VertexId> stack{set[0]};
  seen[set[0]] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (VertexId w : g.adj[u]) {
      if (in[w] && !seen[w]) { seen[w] = true; ++count; stack.push_back(w); }
    }
  }
  if (count != set.size()) return Verdict::fail("induced subgraph disconnected");
  return Verdict::ok();
}

Verdict is_mcds(const Graph& g, std::span<const VertexId> set) {
  if (g.n > 40) throw Error("is_mcds: n > 40 guard");
  auto dom = is_dominating(g, set);
  if (!dom) return dom;
  auto conn = is_connected(g, set);
  if (!conn) return conn;
  std::vector<VertexId> cur(set.begin(), set.end());
  for (std::size_t i = 0; i < cur.size(); ++i) {
    std::vector<VertexId> without;
    without.reserve(cur.size() - 1);
    for (std::size_t j = 0; j < cur.size(); ++j) {
      if (j != i) without.push_back(cur[j]);
    }
    if (is_dominating(g, without) && is_connected(g, without)) {
      return Verdict::fail("vertex " + std::to_string(cur[i]) + " redundant");
    }
  }
  return Verdict::ok();
}

Verdict is_valid_coloring(const Hypergraph& h, std::span<const std::uint32_t> colors,
                          std::uint32_t max_color) {
  if (colors.size() != h.num_vertices()) return Verdict::fail("color vector size mismatch");
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (colors[v] < 1 || colors[v] > max_color) {
      return Verdict::fail("vertex " + std::to_string(v) + " color out of range");
    }
  }
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto& mem = h.edge(e);
    if (mem.size() < 2) continue;
    bool mono = true;
    for (VertexId v : mem) {
      if (colors[v] != colors[mem[0]]) { mono = false; break; }
    }
    if (mono) return Verdict::fail(edge_str(h, e) + " monochromatic");
  }
  return Verdict::ok();
}

Verdict is_maximal_matching(const Hypergraph& h, std::span<const EdgeId> chosen) {
  std::vector<bool> covered(h.num_vertices(), false);
  std::vector<bool> in(h.num_edges(), false);
  for (EdgeId e : chosen) {
    if (e >= h.num_edges()) return Verdict::fail("edge id out of range");
    in[e] = true;
    for (VertexId v : h.edge(e)) {
      if (covered[v]) {
        return Verdict::fail(edge_str(h, e) + " overlaps another chosen edge at vertex " +
                             std::to_string(v));
      }
      covered[v] = true;
    }
  }
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (in[e]) continue;
    bool intersects = false;
    for (VertexId v : h.edge(e)) {
      if (covered[v]) { intersects = true; break; }
    }
    if (!intersects) return Verdict::fail(edge_str(h, e) + " could be added");
  }
  return Verdict::ok();
}

Verdict is_maximal_clique(const ServerGraph& g, std::span<const VertexId> set) {
  auto in = member_mask(g.n, set);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (!g.has_edge(set[i], set[j])) {
        return Verdict::fail("vertices " + std::to_string(set[i]) + "," +
                             std::to_string(set[j]) + " not adjacent");
      }
    }
  }
  for (VertexId v = 0; v < g.n; ++v) {
    if (in[v]) continue;
    bool all = true;
    for (VertexId u : set) {
      if (!g.has_edge(v, u)) { all = false; break; }
    }
    if (all) {
      return Verdict::fail("vertex " + std::to_string(v) + " extends the clique");
    }
  }
  return Verdict::ok();
}

}  // namespace hmis::oracles
