#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hmis/decomposition.hpp"
#include "hmis/hypergraph.hpp"
#include "hmis/netsim.hpp"

namespace hmis::engines {

enum class EngineKind : std::uint8_t {
  local_mis,        // decomposition + collect-and-solve (LOCAL only)
  beame_luby,       // decomposition + constant-dimension marking engine
  turan_recursive,  // decomposition + Turan sampling recursion
  kuw_sqrt,         // whole-network priority engine
  dim_reduced,      // sampling wrapper around an inner engine
};

struct EngineChoice {
  EngineKind kind = EngineKind::turan_recursive;
  EngineKind inner = EngineKind::turan_recursive;  // for dim_reduced
  int d = 3;                                       // dimension parameter
  std::optional<double> eps;                       // sets d = 1 + ceil(1/eps)
};

// Parses "local-mis" | "beame-luby" | "turan-recursive" | "kuw-sqrt" |
// "dim-reduced:<inner>"; throws on unknown names.
EngineChoice parse_engine(const std::string& name);
std::string engine_name(const EngineChoice& choice);

struct MisOptions {
  sim::Representation repr = sim::Representation::server_client;
  sim::Mode mode = sim::Mode::congest();
  EngineChoice engine;
  std::uint64_t seed = 1;
  std::uint64_t max_rounds = 0;  // per-phase guard; 0 = default
};

struct MisResult {
  std::vector<bool> in_set;  // per hypernode; only meaningful on the active set
  sim::RunTrace trace;
  std::uint32_t colors_used = 0;
  std::uint64_t outer_iterations = 0;  // engine headline count
  std::uint64_t recursion_depth = 0;
  std::uint64_t dim_samples = 0;     // dim-reduced sampling events
  std::uint64_t dim_violations = 0;  // dimension-violation resamples
  bool timed_out = false;
  std::string anomaly;

  std::vector<VertexId> members() const;
};

// MIS of the sub-hypergraph induced by `active`, communicating over the full
// host network of h.
MisResult solve_subgraph_mis(const Hypergraph& h, const std::vector<bool>& active,
                             const MisOptions& opt);
MisResult solve_mis(const Hypergraph& h, const MisOptions& opt);

struct ZetaProfile {
  double zeta = 0.0;
  std::uint64_t count = 0;  // witness |N_j|
  std::uint32_t j = 1;      // witness depth
  std::vector<double> per_vertex;
  sim::RunTrace trace;
};

// Distributed zeta: per-node local maxima plus convergecast over a BFS forest.
// Errors when the active sub-hypergraph has dimension > d.
ZetaProfile compute_zeta(const Hypergraph& h, const std::vector<bool>& active, int d,
                         sim::Representation repr, sim::Mode mode, std::uint64_t seed);

struct TuranResult {
  std::vector<VertexId> sample;  // S*, independent in the >=d sub-hypergraph
  sim::RunTrace trace;
};

// One-shot sampling of the Turan extension lemma; requires every edge of the
// working hypergraph to have size >= d and delta_bound >= its average degree.
TuranResult turan_sample(const Hypergraph& h, const std::vector<bool>& active, int d,
                         double delta_bound, sim::Representation repr, sim::Mode mode,
                         std::uint64_t seed);

}  // namespace hmis::engines
