#include "hmis/graph.hpp"

#include <algorithm>
#include <sstream>

namespace hmis {

Graph Graph::build(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges) {
  Graph g;
  g.n = n;
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw Error("graph: vertex id out of range");
    if (u == v) throw Error("graph: self loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  g.adj.assign(n, {});
  for (auto [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u == v) return false;
  const auto& a = adj[u];
  return std::binary_search(a.begin(), a.end(), v);
}

bool Graph::connected() const {
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (VertexId w : adj[u]) {
      if (!seen[w]) { seen[w] = true; ++count; stack.push_back(w); }
    }
  }
  return count == n;
}

Rational Graph::avg_degree() const {
  if (n == 0) return Rational();
  return Rational(static_cast<std::int64_t>(2 * edges.size()), static_cast<std::int64_t>(n));
}

namespace {

std::vector<long long> int_tokens(std::string_view text) {
  std::vector<long long> out;
  std::string cur;
  bool in_comment = false;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(std::stoll(cur));
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == '#') in_comment = true;
    if (c == '\n') in_comment = false;
    if (in_comment) continue;
    if (c == '-' || (c >= '0' && c <= '9')) {
      cur.push_back(c);
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      flush();
    } else {
      throw Error("graph parse: unexpected character");
    }
  }
  flush();
  return out;
}

}  // namespace

// "n m" header then m lines "u v" with 1-based ids.
Graph parse_graph(std::string_view text) {
  auto toks = int_tokens(text);
  if (toks.size() < 2) throw Error("graph parse: malformed header");
  long long n = toks[0], m = toks[1];
  if (n < 0 || m < 0) throw Error("graph parse: malformed header");
  if (static_cast<std::size_t>(toks.size()) != 2 + 2 * static_cast<std::size_t>(m)) {
    throw Error("graph parse: edge count mismatch");
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(m);
  for (long long i = 0; i < m; ++i) {
    long long u = toks[2 + 2 * i], v = toks[3 + 2 * i];
    if (u < 1 || u > n || v < 1 || v > n) throw Error("graph parse: vertex id out of range");
    edges.emplace_back(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1));
  }
  return Graph::build(static_cast<std::size_t>(n), std::move(edges));
}

std::string serialize(const Graph& g) {
  std::ostringstream os;
  os << g.n << ' ' << g.edges.size() << '\n';
  for (auto [u, v] : g.edges) os << (u + 1) << ' ' << (v + 1) << '\n';
  return os.str();
}

Hypergraph as_hypergraph(const Graph& g) {
  std::vector<std::vector<VertexId>> edges;
  edges.reserve(g.edges.size());
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  return Hypergraph::build(g.n, std::move(edges));
}

std::vector<VertexId> parse_id_set(std::string_view text, std::size_t n) {
  auto toks = int_tokens(text);
  std::vector<VertexId> out;
  out.reserve(toks.size());
  for (long long v : toks) {
    if (v < 1 || static_cast<std::size_t>(v) > n) throw Error("id set: vertex id out of range");
    out.push_back(static_cast<VertexId>(v - 1));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hmis
