#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hmis/netsim.hpp"

namespace hmis::decomp {

using sim::LinkId;
using sim::NodeId;

// Frozen validation constants, calibrated once on n=64 random instances
// (worst observed: eccentricity 1.34 * log2 n, link load 0.056 * log2^3 n
// over 400 runs) and kept with 1.5x headroom.
inline constexpr double kDiameterFactor = 2.0;       // C_d: ecc(center) <= C_d * log2 n
inline constexpr double kMultiplicityFactor = 0.1;   // C_e: link load <= C_e * log2^3 n

// One container membership as recorded by a single node: the node belongs to
// the cluster graph G_tag, knows its first-receipt link toward the center and
// which of its incident links carried the center's id.
struct ContainerRec {
  std::uint32_t tag = 0;       // center node id
  std::uint32_t color = 0;     // iteration that produced the set
  LinkId parent_link = sim::kNoLink;
  std::uint32_t depth = 0;     // hops to center along the recorded path
  std::vector<LinkId> links;   // incident links in G_tag (sorted)
};

struct Decomposition {
  // Per hypernode (server): assigned set center and color; kNoNode / -1 when
  // the iteration cap was hit before assignment.
  std::vector<NodeId> center;
  std::vector<std::int32_t> color;
  std::uint32_t num_colors = 0;
  std::uint32_t iterations = 0;
  bool complete = false;
  std::vector<NodeId> unassigned;

  // Per topology node: container memberships, sorted by (tag, color).
  std::vector<std::vector<ContainerRec>> node_containers;

  const ContainerRec* find(NodeId node, std::uint32_t tag, std::uint32_t color) const;
};

struct Params {
  std::uint32_t iteration_cap = 0;  // 0: max(6, 8*ceil(log2 n))
};

// Runs the randomized low-diameter decomposition as a node program on the
// session's topology. In CONGEST mode each color iteration runs radius-j
// sub-iterations of max-id flooding; in LOCAL mode all radii flood at once.
Decomposition linial_saks(sim::Session& session, Params params = {});

struct Report {
  std::vector<std::string> violations;
  std::uint32_t max_eccentricity = 0;
  std::uint32_t max_link_multiplicity = 0;
  std::vector<std::uint32_t> link_multiplicity_histogram;
  bool ok() const { return violations.empty(); }
};

// Centralized checks: partition-ness, set-in-container membership, container
// connectivity and eccentricity from the center, same-color hyperedge
// disjointness, and per-link container multiplicity. Violations are data.
Report verify_decomposition(const Decomposition& d, const Hypergraph& h,
                            const sim::Topology& topo,
                            double diameter_factor = kDiameterFactor,
                            double multiplicity_factor = kMultiplicityFactor);

}  // namespace hmis::decomp
