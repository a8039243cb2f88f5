#pragma once

// Local decision rules of the priority-based MIS engine, shared between the
// node program and the tests that trace them with forced priorities.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hmis/hypergraph.hpp"

namespace hmis::engines {

using PrioOf = std::function<std::pair<std::uint64_t, VertexId>(VertexId)>;

// Marked iff (r, id) is not the lexicographic maximum of any incident edge.
inline bool kuw_marked(VertexId v, const std::vector<std::vector<VertexId>>& incident,
                       const PrioOf& prio) {
  for (const auto& edge : incident) {
    if (edge.empty()) continue;
    std::pair<std::uint64_t, VertexId> mx{0, 0};
    for (VertexId u : edge) mx = std::max(mx, prio(u));
    if (mx == prio(v)) return false;
  }
  return true;
}

// Eliminated iff unmarked and some incident edge has all its other members
// marked (vacuously true for a singleton edge).
inline bool kuw_eliminated(VertexId v, const std::vector<std::vector<VertexId>>& incident,
                           const std::function<bool(VertexId)>& marked) {
  if (marked(v)) return false;
  for (const auto& edge : incident) {
    bool rest = true;
    for (VertexId u : edge) {
      if (u != v && !marked(u)) { rest = false; break; }
    }
    if (rest && !edge.empty()) return true;
  }
  return false;
}

}  // namespace hmis::engines
