#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hmis/hypergraph.hpp"

namespace hmis {

// Plain undirected graph used by the standard-graph applications and the
// lower-bound instance families.
struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;  // u < v, sorted, dedup
  std::vector<std::vector<VertexId>> adj;

  static Graph build(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges);

  std::size_t degree(VertexId v) const { return adj[v].size(); }
  bool has_edge(VertexId u, VertexId v) const;
  bool connected() const;

  // degree sum / n, exact
  Rational avg_degree() const;
};

// Text format: "n m" then m lines "u v", 1-based ids.
Graph parse_graph(std::string_view text);
std::string serialize(const Graph& g);

// A 2-dim hypergraph view of a graph (each edge a 2-element hyperedge).
Hypergraph as_hypergraph(const Graph& g);

// Parse a whitespace-separated list of 1-based vertex ids.
std::vector<VertexId> parse_id_set(std::string_view text, std::size_t n);

}  // namespace hmis
