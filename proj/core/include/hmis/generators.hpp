#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hmis/graph.hpp"
#include "hmis/hypergraph.hpp"
#include "hmis/oracles.hpp"

namespace hmis::gen {

// Random hypergraph: m edges, sizes uniform on [2, dmax], members uniform
// without replacement. Seed-deterministic.
Hypergraph random_hypergraph(std::size_t n, std::size_t m, std::size_t dmax, std::uint64_t seed);

// Random connected graph: a random spanning tree plus `extra` uniform edges.
Graph random_connected_graph(std::size_t n, std::size_t extra, std::uint64_t seed);

Graph star(std::size_t n);

struct BridgeRing {
  Graph graph;
  std::vector<VertexId> bridges;
  std::uint32_t d = 0;       // bridge spacing
  std::size_t discarded = 0; // l vertices dropped to make n' = 4dD
};

// Ring of n' = 4dD vertices with bridge vertices every d positions, each
// connected to the 2d nearest vertices. Non-bridge vertices keep degree 2.
// Requires n >= 8D so that d >= 2.
BridgeRing bridge_ring(std::size_t n, std::size_t diameter_param);

struct ScsInstance {
  Graph base;                       // G
  std::vector<std::pair<VertexId, VertexId>> h_edges;  // H subset of E(G)
  Graph subdivided;                 // G'(G, H)
  std::vector<VertexId> subdividers_h;      // vertices subdividing H edges
  std::vector<VertexId> subdividers_other;  // vertices subdividing E(G) \ E(H)
  std::vector<VertexId> outer;              // pendant vertices
};

// Subdivide every edge of G; attach an outer pendant to every original vertex
// and to every subdivider of an H edge.
ScsInstance scs_subdivision(const Graph& g,
                            const std::vector<std::pair<VertexId, VertexId>>& h_edges);

// Brute-force check of the reduction: every MCDS of G'(G,H) avoids all
// subdividers of E(G) \ E(H) iff (V(G), H) is a spanning connected subgraph.
// Guarded at |V(G)| <= 10.
oracles::Verdict check_scs_reduction(const Graph& g,
                                     const std::vector<std::pair<VertexId, VertexId>>& h_edges);

}  // namespace hmis::gen
