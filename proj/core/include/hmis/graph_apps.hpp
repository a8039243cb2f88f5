#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hmis/engines.hpp"
#include "hmis/graph.hpp"

namespace hmis::apps {

struct DomOptions {
  engines::EngineChoice engine;
  sim::Mode mode = sim::Mode::congest();
  std::uint64_t seed = 1;
};

struct DomResult {
  std::vector<VertexId> set;
  sim::RunTrace trace;
  bool precondition_failed = false;
  bool timed_out = false;
  std::string anomaly;

  // bmds: induced average degree of the output and the target bound
  Rational output_avg_degree;
  double balance_bound = 0.0;

  // mcds: charged super-node forwarding overhead and per-level invariant
  // violations (empty on healthy runs)
  std::uint64_t forwarding_rounds = 0;
  std::vector<std::string> level_violations;
};

// Minimal dominating set within the restricted set R (must dominate V):
// one server per R-vertex, one client per vertex with hyperedge N[v] cap R;
// the MIS complement within R is the output.
DomResult rmds(const Graph& g, const std::vector<bool>& restricted, const DomOptions& opt);

// Balanced minimal dominating set: degree-thresholded marking followed by
// rmds on the marked set.
DomResult bmds(const Graph& g, const DomOptions& opt);

// Minimal connected dominating set by BFS levels, processed leaves-first.
DomResult mcds(const Graph& g, const DomOptions& opt);

}  // namespace hmis::apps
