#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hmis/graph.hpp"
#include "hmis/hypergraph.hpp"

namespace hmis::oracles {

// Every failing verdict carries a concrete witness.
struct Verdict {
  bool pass = false;
  std::string witness;

  static Verdict ok() { return {true, ""}; }
  static Verdict fail(std::string w) { return {false, std::move(w)}; }
  explicit operator bool() const { return pass; }
};

// --- hypergraph MIS family ---

Verdict is_independent(const Hypergraph& h, std::span<const VertexId> set);
Verdict is_maximal_independent(const Hypergraph& h, std::span<const VertexId> set);

// Subgraph variant: independence/maximality within the induced sub-hypergraph.
Verdict is_maximal_independent_in(const Hypergraph& h, std::span<const VertexId> active,
                                  std::span<const VertexId> set);

// Complete family by subset enumeration; guarded at n <= 20.
std::vector<std::vector<VertexId>> enumerate_mis(const Hypergraph& h);

Verdict is_minimal_hitting_set(const Hypergraph& h, std::span<const VertexId> set);

// --- standard-graph dominating sets ---

Verdict is_dominating(const Graph& g, std::span<const VertexId> set);
Verdict is_minimal_dominating(const Graph& g, std::span<const VertexId> set);
// Is the induced subgraph on `set` connected (true for empty/singleton)?
Verdict is_connected(const Graph& g, std::span<const VertexId> set);
// dominating && connected && no single removal keeps both; guarded at n <= 40.
Verdict is_mcds(const Graph& g, std::span<const VertexId> set);

// --- symmetry extras ---

// colors[v] in [1, max_color]; no hyperedge monochromatic.
Verdict is_valid_coloring(const Hypergraph& h, std::span<const std::uint32_t> colors,
                          std::uint32_t max_color);
Verdict is_maximal_matching(const Hypergraph& h, std::span<const EdgeId> chosen);
Verdict is_maximal_clique(const ServerGraph& g, std::span<const VertexId> set);

}  // namespace hmis::oracles
