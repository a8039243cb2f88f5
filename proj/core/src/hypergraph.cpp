#include "hmis/hypergraph.hpp"

#include <algorithm>
#include <sstream>

namespace hmis {

Hypergraph Hypergraph::build(std::size_t n, std::vector<std::vector<VertexId>> edges,
                             bool keep_duplicates) {
  Hypergraph h;
  h.n_ = n;
  for (auto& e : edges) {
    if (e.empty()) throw Error("hypergraph: empty edge");
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    for (VertexId v : e) {
      if (v >= n) throw Error("hypergraph: vertex id " + std::to_string(v) +
                              " out of range (n=" + std::to_string(n) + ")");
    }
  }
  std::sort(edges.begin(), edges.end());
  if (!keep_duplicates) {
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  h.edges_ = std::move(edges);
  h.incident_.assign(n, {});
  for (EdgeId e = 0; e < h.edges_.size(); ++e) {
    for (VertexId v : h.edges_[e]) h.incident_[v].push_back(e);
  }
  return h;
}

const std::vector<EdgeId>& Hypergraph::incident(VertexId v) const {
  if (v >= n_) throw Error("hypergraph: vertex id out of range");
  return incident_[v];
}

std::size_t Hypergraph::degree(VertexId v) const {
  if (v >= n_) throw Error("hypergraph: vertex id out of range");
  return incident_[v].size();
}

HypergraphStats Hypergraph::stats() const {
  HypergraphStats s;
  std::uint64_t degree_sum = 0;
  for (const auto& inc : incident_) {
    s.max_degree = std::max<std::uint32_t>(s.max_degree, inc.size());
    degree_sum += inc.size();
  }
  for (const auto& e : edges_) {
    s.dimension = std::max<std::uint32_t>(s.dimension, e.size());
  }
  s.avg_degree = n_ == 0 ? Rational() : Rational(static_cast<std::int64_t>(degree_sum),
                                                 static_cast<std::int64_t>(n_));
  return s;
}

bool ServerGraph::has_edge(VertexId u, VertexId v) const {
  if (u == v) return false;
  const auto& a = adj[u];
  return std::binary_search(a.begin(), a.end(), v);
}

ServerGraph server_graph(const Hypergraph& h) {
  ServerGraph g;
  g.n = h.num_vertices();
  g.adj.assign(g.n, {});
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        pairs.emplace_back(e[i], e[j]);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  g.edges = std::move(pairs);
  for (auto [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

SubHypergraphView::SubHypergraphView(const Hypergraph& base, std::vector<VertexId> kept)
    : base_(&base), kept_(std::move(kept)) {
  std::sort(kept_.begin(), kept_.end());
  kept_.erase(std::unique(kept_.begin(), kept_.end()), kept_.end());
  in_view_.assign(base.num_vertices(), false);
  for (VertexId v : kept_) {
    if (v >= base.num_vertices()) throw Error("induced: vertex id out of range");
    in_view_[v] = true;
  }
  for (EdgeId e = 0; e < base.num_edges(); ++e) {
    bool all = true;
    for (VertexId v : base.edge(e)) {
      if (!in_view_[v]) { all = false; break; }
    }
    if (all) kept_edges_.push_back(e);
  }
}

SubHypergraphView induced(const Hypergraph& h, std::span<const VertexId> keep) {
  return SubHypergraphView(h, std::vector<VertexId>(keep.begin(), keep.end()));
}

namespace {

// Strips comments, yields whitespace-separated tokens.
std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  bool in_comment = false;
  for (char c : text) {
    if (c == '#') in_comment = true;
    if (c == '\n') in_comment = false;
    if (in_comment) continue;
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!cur.empty()) { out.push_back(cur); cur.clear(); }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::uint64_t parse_count(const std::string& tok, const char* what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(tok, &pos);
    if (pos != tok.size() || v < 0) throw Error("");
    return static_cast<std::uint64_t>(v);
  } catch (...) {
    throw Error(std::string("parse: bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

Hypergraph parse_hypergraph(std::string_view text) {
  auto toks = tokenize(text);
  if (toks.size() < 2) throw Error("parse: malformed header");
  std::size_t idx = 0;
  std::uint64_t n = parse_count(toks[idx++], "vertex count");
  std::uint64_t m = parse_count(toks[idx++], "edge count");
  std::vector<std::vector<VertexId>> edges;
  edges.reserve(m);
  for (std::uint64_t e = 0; e < m; ++e) {
    if (idx >= toks.size()) throw Error("parse: edge length mismatch (truncated)");
    std::uint64_t k = parse_count(toks[idx++], "edge size");
    if (k == 0) throw Error("parse: empty edge");
    std::vector<VertexId> mem;
    mem.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) {
      if (idx >= toks.size()) throw Error("parse: edge length mismatch (truncated)");
      std::uint64_t v = parse_count(toks[idx++], "vertex id");
      if (v == 0 || v > n) throw Error("parse: vertex id out of range");
      mem.push_back(static_cast<VertexId>(v - 1));
    }
    edges.push_back(std::move(mem));
  }
  if (idx != toks.size()) throw Error("parse: trailing tokens");
  return Hypergraph::build(n, std::move(edges));
}

std::string serialize(const Hypergraph& h) {
  std::ostringstream os;
  os << h.num_vertices() << ' ' << h.num_edges() << '\n';
  for (const auto& e : h.edges()) {
    os << e.size();
    for (VertexId v : e) os << ' ' << (v + 1);
    os << '\n';
  }
  return os.str();
}

std::uint64_t fingerprint(std::string_view content) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : content) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace hmis
