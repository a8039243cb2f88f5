#pragma once

// Internal machinery shared by the MIS engine cores. Not installed.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "hmis/hypergraph.hpp"
#include "hmis/multiplex.hpp"
#include "hmis/netsim.hpp"

namespace hmis::engines {

using sim::ContainerView;
using sim::LinkId;
using sim::NodeId;
using sim::SubApi;
using sim::SubProgram;
using sim::Word;

enum class VStatus : std::uint8_t { undecided = 0, in_set = 1, out = 2, excluded = 3 };

// Does this status allow the vertex to still appear in projected edges?
inline bool blocks_edge(VStatus s) { return s == VStatus::out || s == VStatus::excluded; }

struct EdgeKnow {
  EdgeId id = 0;
  std::vector<VertexId> members;  // full member list, sorted
};

struct VertexKnow {
  VStatus status = VStatus::excluded;
  bool shot = true;            // current sampling-wrapper membership
  std::int32_t color = -1;     // decomposition color
  NodeId center = sim::kNoNode;
};

// Per-topology-node persistent memory for one engine invocation. A node
// program only ever touches its own entry; cross-node information flows
// through messages.
struct NodeState {
  bool is_hypernode = false;
  VertexId vertex = 0;
  EdgeId own_edge = 0;            // SC clients
  VStatus status = VStatus::excluded;
  bool shot = true;
  std::int32_t color = -1;
  NodeId center = sim::kNoNode;
  std::vector<EdgeKnow> edges;    // incident edges (VC/servers) or the own edge (clients)
  std::map<VertexId, VertexKnow> mirror;
};

struct EngineConfig {
  std::size_t n = 0;  // hypernodes
  std::size_t m = 0;  // hyperedges
  sim::Representation repr = sim::Representation::vertex_centric;
  std::uint32_t id_bits = 16;  // word width for wide-value splitting
  int dim_param = 3;           // d for beame-luby / turan recursion
  std::uint64_t bl_iter_cap = 0;
  std::uint64_t kuw_iter_cap = 0;
  std::uint64_t deps_level_cap = 0;
  bool use_sets = false;          // color-phase filtering (decomposition sets)
  bool use_shot = false;          // restrict to NodeState/mirror shot flags
  std::uint32_t phase_color = 0;  // active color when use_sets
};

// Phase-scoped view of one hyperedge: the members that may still change, plus
// whether the edge constrains this phase at all.
struct PhaseEdge {
  EdgeId id = 0;
  const EdgeKnow* know = nullptr;
  bool alive = true;
};

// ---- message kinds ----
inline constexpr Word kMsgChild = 1;
inline constexpr Word kMsgUp = 2;
inline constexpr Word kMsgDown = 3;
inline constexpr Word kMsgPub = 4;
inline constexpr Word kMsgRelay = 5;
inline constexpr Word kMsgList = 6;
inline constexpr Word kMsgCollect = 7;
inline constexpr Word kMsgDecide = 8;

// Shared participant machinery: role detection, phase edges, mirrors,
// status-carrying publishes with SC client relaying, and tree aggregation.
class HyperCore : public SubProgram {
 public:
  HyperCore(NodeState* st, const EngineConfig* cfg) : st_(st), cfg_(cfg) {}

 protected:
  // --- role & phase-edge setup (call from start()) ---
  void setup(SubApi& api);

  bool is_vertex_ = false;  // undecided hypernode this phase decides
  bool is_client_ = false;
  std::vector<PhaseEdge> pedges_;

  // participates(v): phase filter for undecided vertices
  bool participates(VertexId v) const;
  VStatus mirror_status(VertexId v) const;
  bool mirror_shot(VertexId v) const;

  // current projected members of a phase edge (status undecided)
  std::vector<VertexId> proj(const PhaseEdge& e) const;
  bool edge_alive(const PhaseEdge& e) const;
  void refresh_aliveness();

  // --- tree ---
  void tree_start(SubApi& api);  // child announce
  std::vector<LinkId> children_;
  bool tree_ready(std::uint32_t vround) const { return vround >= 1; }

  // --- publish protocol ---
  // A publish step `step` sends [kMsgPub, step, nwords, words...] to the
  // tracking links; SC clients forward aggregated [kMsgRelay, step, count,
  // (vertex, nwords, words...)...] back to members. words[0] always encodes
  // the sender's status.
  void publish(SubApi& api, std::uint32_t step, std::vector<Word> words);
  // true once every expected co-member's step words have arrived
  bool publish_complete(std::uint32_t step);
  // do I still share a live phase edge with v (judged from my current view)?
  bool shares_alive_edge(VertexId v) const;
  // which co-members publish at this step (default: still-undecided ones that
  // share a live edge); cores running restricted subphases narrow this
  virtual bool expects_publish_from(std::uint32_t step, VertexId v) {
    (void)step;
    return mirror_status(v) == VStatus::undecided && shares_alive_edge(v);
  }
  const std::vector<Word>* step_words(std::uint32_t step, VertexId v) const;
  // iterate (vertex, words) of a completed step
  const std::map<VertexId, std::vector<Word>>& step_bucket(std::uint32_t step);

  // process one incoming message into the shared buffers; returns true if
  // consumed
  bool absorb(SubApi& api, const sim::VMessage& msg);

  // SC client duties: relay completed steps (call every vstep)
  void client_service(SubApi& api);

  // --- tree aggregation ---
  void agg_send_up_if_ready(SubApi& api, std::uint32_t step, const std::vector<Word>& own,
                            const std::function<std::vector<Word>(const std::vector<Word>&,
                                                                  const std::vector<Word>&)>& comb);
  bool agg_up_complete(std::uint32_t step) const;            // root only
  std::vector<Word> agg_root_value(std::uint32_t step) const;
  void broadcast_down(SubApi& api, std::uint32_t step, std::vector<Word> words);
  const std::vector<Word>* down_value(std::uint32_t step) const;

  // status mutation + mirror upkeep
  void set_status(VStatus s);
  void note_vertex_words(std::uint32_t step, VertexId v, const std::vector<Word>& words);

  // co-members whose publishes this node tracks (vertices and clients)
  std::set<VertexId> tracked_;
  std::uint32_t tag_ = 0;
  std::map<NodeId, LinkId> link_of_peer_;

  NodeState* st_;
  const EngineConfig* cfg_;

  // buffers
  std::map<std::uint32_t, std::map<VertexId, std::vector<Word>>> pub_buf_;
  std::map<std::uint32_t, std::map<LinkId, std::vector<Word>>> up_buf_;
  std::map<std::uint32_t, std::vector<Word>> down_buf_;
  std::map<std::uint32_t, std::vector<Word>> root_agg_;
  std::map<std::uint32_t, bool> up_sent_;
  std::set<std::uint32_t> relayed_;
  bool sent_child_ = false;
};

std::vector<NodeState> init_node_states(const sim::Topology& topo, const Hypergraph& h,
                                        const std::vector<bool>& active);

// exchange/shipping cores (whole network, no tree required)
std::unique_ptr<SubProgram> make_list_ship(NodeState* st, const EngineConfig* cfg);
std::unique_ptr<SubProgram> make_status_exchange(NodeState* st, const EngineConfig* cfg);

// engine cores
struct CorePhase {  // parameters for one multiplexed engine phase
  const EngineConfig* cfg;
};

std::unique_ptr<SubProgram> make_collect_core(NodeState* st, const EngineConfig* cfg);
std::unique_ptr<SubProgram> make_beame_luby_core(NodeState* st, const EngineConfig* cfg);
std::unique_ptr<SubProgram> make_delta_eps_core(NodeState* st, const EngineConfig* cfg);
std::unique_ptr<SubProgram> make_kuw_core(NodeState* st, const EngineConfig* cfg);
std::unique_ptr<SubProgram> make_zeta_core(NodeState* st, const EngineConfig* cfg, int d);
std::unique_ptr<SubProgram> make_turan_core(NodeState* st, const EngineConfig* cfg, int d,
                                            double delta_bound);
std::unique_ptr<SubProgram> make_sample_core(NodeState* st, const EngineConfig* cfg,
                                             double threshold);

// local zeta over a set of projected edges incident to v: best (count, j)
struct ZetaPair {
  std::uint64_t count = 0;
  std::uint32_t j = 1;
  double value() const;
};
ZetaPair local_zeta(VertexId v, const std::vector<std::vector<VertexId>>& incident_projections,
                    int d);

}  // namespace hmis::engines
