#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hmis/hypergraph.hpp"
#include "hmis/graph.hpp"
#include "hmis/rng.hpp"

namespace hmis::sim {

using NodeId = std::uint32_t;
using LinkId = std::uint32_t;
using Word = std::uint64_t;

inline constexpr LinkId kNoLink = std::numeric_limits<LinkId>::max();
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class Role : std::uint8_t { plain, server, client };
enum class Representation : std::uint8_t { server_client, vertex_centric };
enum class Regime : std::uint8_t { local, congest };

const char* to_string(Representation r);
const char* to_string(Regime r);

struct LinkEnd {
  LinkId link;
  NodeId peer;
};

// Simulated communication topology. Nodes are 0..num_nodes-1; links are
// undirected and carry ids. Per-node static local knowledge lives in the
// builder outputs (roles, the source hypergraph for member lists).
class Topology {
 public:
  static Topology from_hypergraph(const Hypergraph& h, Representation repr);
  static Topology from_graph(const Graph& g);
  // Virtual bipartite network: servers 0..ns-1, clients ns..ns+nc-1.
  static Topology bipartite(std::size_t num_servers, std::size_t num_clients,
                            const std::vector<std::pair<NodeId, NodeId>>& server_client_links);

  std::size_t num_nodes() const { return roles_.size(); }
  std::size_t num_links() const { return link_ends_.size(); }
  Role role(NodeId v) const { return roles_[v]; }
  std::span<const LinkEnd> links_of(NodeId v) const;
  NodeId link_peer(LinkId l, NodeId self) const {
    const auto& [a, b] = link_ends_[l];
    return a == self ? b : a;
  }
  std::pair<NodeId, NodeId> link(LinkId l) const { return link_ends_[l]; }

  // Width parameters: ids and counts fit one word of ceil(log2(id_space+2)) bits.
  std::size_t id_space() const { return id_space_; }

  Representation representation() const { return repr_; }
  const Hypergraph* source() const { return source_; }
  // server-client: node of a hypernode / hyperedge.
  NodeId server_node(VertexId v) const { return v; }
  NodeId client_node(EdgeId e) const { return static_cast<NodeId>(n_servers_ + e); }
  std::size_t server_count() const { return n_servers_; }

 private:
  std::vector<Role> roles_;
  std::vector<std::pair<NodeId, NodeId>> link_ends_;
  std::vector<std::vector<LinkEnd>> adjacency_;  // sorted by link id
  std::size_t id_space_ = 0;
  std::size_t n_servers_ = 0;
  Representation repr_ = Representation::vertex_centric;
  const Hypergraph* source_ = nullptr;

  void finish(std::size_t id_space);
};

struct Mode {
  Regime regime = Regime::congest;
  std::uint32_t word_factor = 4;  // c0: words per link per round in CONGEST
  bool hard_violation = false;    // throw instead of flagging

  static Mode local() { return {Regime::local, 4, false}; }
  static Mode congest(std::uint32_t c0 = 4, bool hard = false) {
    return {Regime::congest, c0, hard};
  }
};

inline std::uint32_t word_bits(std::size_t id_space) {
  std::uint32_t b = 1;
  while ((std::uint64_t{1} << b) < static_cast<std::uint64_t>(id_space) + 2) ++b;
  return b;
}

struct InMessage {
  LinkId link;
  NodeId from;
  std::vector<Word> words;
};

using Inbox = std::vector<InMessage>;  // sorted by link id

struct RunTrace {
  std::uint32_t rounds = 0;
  std::uint64_t messages = 0;
  std::uint64_t max_payload_bits = 0;
  std::uint64_t violations = 0;
  bool all_halted = false;
  bool quiesced = false;
  bool hit_round_cap = false;
  std::vector<std::vector<std::int64_t>> outputs;
  std::vector<std::string> events;  // line-delimited JSON when enabled

  void accumulate(const RunTrace& other);
};

class NodeApi {
 public:
  virtual ~NodeApi() = default;
  virtual NodeId id() const = 0;
  virtual Role role() const = 0;
  virtual std::span<const LinkEnd> links() const = 0;
  virtual std::size_t num_network_nodes() const = 0;
  virtual Rng& rng() = 0;
  virtual void send(LinkId link, std::vector<Word> words) = 0;
  virtual void halt() = 0;
  virtual std::vector<std::int64_t>& output() = 0;
};

class Program {
 public:
  virtual ~Program() = default;
  virtual void init(NodeApi&) {}
  virtual void step(NodeApi&, std::uint32_t round, const Inbox& inbox) = 0;
};

using ProgramFactory = std::function<std::unique_ptr<Program>(NodeId, const Topology&)>;

// Shared drain/tick channel for multiplexed phases: the loop raises `tick`
// when no payloads are queued or in flight, standing in for the fixed round
// budgets synchronous algorithms would use.
struct PhaseCoordinator {
  std::int64_t queued_words = 0;
  bool tick = false;
};

struct RunOptions {
  std::uint64_t max_rounds = 0;  // 0: default 50*n^2 guard
  bool stop_on_quiescence = false;
  // Idle rounds tolerated before declaring quiescence; round-counter driven
  // programs (BFS child collection) have single silent rounds.
  std::uint32_t quiescence_grace = 3;
  bool record_events = false;
  std::uint64_t phase_salt = 0;  // mixed into per-node randomness streams
  PhaseCoordinator* coordinator = nullptr;
};

// Executes synchronized rounds until all nodes halt, quiescence (if enabled),
// or the round cap. A payload sent in round r is delivered in round r+1;
// init-phase sends are delivered in round 1. Deterministic in
// (topology, program, mode, seed, options).
RunTrace run(const Topology& topo, const ProgramFactory& factory, const Mode& mode,
             std::uint64_t seed, const RunOptions& options = {});

// Accumulates metrics across the phases of one algorithm run.
class Session {
 public:
  Session(const Topology& topo, Mode mode, std::uint64_t seed)
      : topo_(&topo), mode_(mode), seed_(seed) {}

  const Topology& topology() const { return *topo_; }
  const Mode& mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_phase_salt() { return ++phase_counter_; }

  RunTrace& total() { return total_; }
  const RunTrace& total() const { return total_; }

  // Runs one phase and folds its metrics into the session totals.
  RunTrace run_phase(const ProgramFactory& factory, RunOptions options = {});

  // Extra rounds charged for simulation overheads (e.g. super-node message
  // forwarding); kept visible in the totals.
  void charge_extra_rounds(std::uint64_t rounds) {
    total_.rounds += rounds;
    charged_rounds_ += rounds;
  }
  std::uint64_t charged_rounds() const { return charged_rounds_; }

 private:
  const Topology* topo_;
  Mode mode_;
  std::uint64_t seed_;
  std::uint64_t phase_counter_ = 0;
  std::uint64_t charged_rounds_ = 0;
  RunTrace total_;
};

}  // namespace hmis::sim
