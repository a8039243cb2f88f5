#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hmis/graph.hpp"
#include "hmis/hypergraph.hpp"
#include "hmis/netsim.hpp"

namespace hmis::sym {

struct SymOptions {
  sim::Representation repr = sim::Representation::server_client;
  sim::Mode mode = sim::Mode::congest();
  std::uint64_t seed = 1;
};

struct LubyResult {
  std::vector<VertexId> set;
  sim::RunTrace trace;
  std::uint64_t iterations = 0;
  bool timed_out = false;
};

// Luby MIS on a standard graph: fresh priorities in [1, n^4] per iteration,
// local maxima join, they and their neighbors leave.
LubyResult luby_mis_2dim(const Graph& g, sim::Mode mode, std::uint64_t seed);

struct ColoringResult {
  std::vector<std::uint32_t> colors;  // 1-based
  std::uint32_t max_color = 0;
  sim::RunTrace trace;
  bool timed_out = false;
  std::string anomaly;
};

// Delta+1 coloring: each hyperedge is reduced to its two smallest members and
// the reduced graph is trial-colored. Rejects singleton hyperedges.
ColoringResult hyper_coloring(const Hypergraph& h, const SymOptions& opt);

struct MatchingResult {
  std::vector<EdgeId> chosen;
  sim::RunTrace trace;
  std::uint64_t iterations = 0;
  bool timed_out = false;
};

// Maximal matching: Luby on the line graph, priorities relayed through the
// hypernodes (server-client representation).
MatchingResult maximal_matching(const Hypergraph& h, sim::Mode mode, std::uint64_t seed);

struct CliqueResult {
  std::vector<VertexId> clique;
  sim::RunTrace trace;
  std::uint64_t iterations = 0;
  bool timed_out = false;
  std::string anomaly;
};

// Maximal clique of the server graph: the minimum-id node coordinates a Luby
// run on the complement of its neighborhood.
CliqueResult maximal_clique(const Hypergraph& h, const SymOptions& opt);

}  // namespace hmis::sym
