#include "hmis/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hmis/multiplex.hpp"
#include "hmis/programs.hpp"

namespace hmis::sym {

using namespace hmis::sim;

namespace {

std::uint32_t ceil_log2(std::uint64_t x) {
  std::uint32_t b = 0;
  while ((std::uint64_t{1} << b) < x) ++b;
  return b;
}

// wire helpers for wide priorities
void push_wide(std::vector<Word>& out, std::uint64_t value, std::uint32_t bits,
               std::uint32_t words) {
  for (std::uint32_t i = 0; i < words; ++i) {
    out.push_back((value >> (i * bits)) & ((Word{1} << bits) - 1));
  }
}
std::uint64_t read_wide(const std::vector<Word>& in, std::size_t pos, std::uint32_t bits,
                        std::uint32_t words) {
  std::uint64_t v = 0;
  for (std::uint32_t i = 0; i < words; ++i) {
    v |= in.at(pos + i) << (i * bits);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Luby MIS on a standard graph (raw program, two-round iterations).
class LubyProgram final : public Program {
 public:
  LubyProgram(std::uint64_t iter_cap, std::uint32_t bits) : cap_(iter_cap), bits_(bits) {}

  void init(NodeApi& api) override { n4_ = pow4(api.num_network_nodes()); }

  // Message types are fixed by round parity: even-round inboxes carry 4-word
  // priorities, odd-round inboxes carry 1-word join announcements. This keeps
  // the n^4 priority exactly at the CONGEST word budget.
  void step(NodeApi& api, std::uint32_t round, const Inbox& inbox) override {
    if (round % 2 == 1) {
      for (const auto& msg : inbox) {
        if (msg.words.size() == 1) {  // a neighbor joined: leave
          api.output() = {0, static_cast<std::int64_t>(iter_)};
          api.halt();
          return;
        }
      }
      iter_ += 1;
      if (iter_ > cap_) {
        api.output() = {-1, static_cast<std::int64_t>(iter_)};
        api.halt();
        return;
      }
      prio_ = api.rng().range(1, n4_);
      std::vector<Word> payload;
      push_wide(payload, prio_, bits_, 4);
      for (const auto& le : api.links()) api.send(le.link, payload);
    } else {
      std::pair<std::uint64_t, NodeId> mine{prio_, api.id()};
      bool best = true;
      for (const auto& msg : inbox) {
        if (msg.words.size() != 4) continue;
        std::uint64_t p = read_wide(msg.words, 0, bits_, 4);
        if (std::make_pair(p, msg.from) > mine) { best = false; break; }
      }
      if (best) {
        for (const auto& le : api.links()) api.send(le.link, {1});
        api.output() = {1, static_cast<std::int64_t>(iter_)};
        api.halt();
      }
    }
  }

 private:
  static std::uint64_t pow4(std::uint64_t n) {
    std::uint64_t r = n * n;
    return std::max<std::uint64_t>(1, r * r);
  }
  std::uint64_t cap_;
  std::uint32_t bits_;
  std::uint64_t n4_ = 1;
  std::uint64_t prio_ = 0;
  std::uint64_t iter_ = 0;
};

}  // namespace

LubyResult luby_mis_2dim(const Graph& g, Mode mode, std::uint64_t seed) {
  Topology topo = Topology::from_graph(g);
  Session session(topo, mode, seed);
  std::uint64_t cap = 50 * (ceil_log2(std::max<std::size_t>(2, g.n)) + 2);
  std::uint32_t bits = word_bits(topo.id_space());
  RunOptions opt;
  opt.max_rounds = 3 * cap + 50;
  RunTrace t = session.run_phase(
      [&](NodeId, const Topology&) { return std::make_unique<LubyProgram>(cap, bits); }, opt);
  LubyResult res;
  res.trace = session.total();
  for (VertexId v = 0; v < g.n; ++v) {
    const auto& out = t.outputs[v];
    if (out.empty() || out[0] < 0) {
      res.timed_out = true;
      continue;
    }
    if (out[0] == 1) res.set.push_back(v);
    res.iterations = std::max<std::uint64_t>(res.iterations, static_cast<std::uint64_t>(out[1]));
  }
  if (!t.all_halted) res.timed_out = true;
  return res;
}

// ---------------------------------------------------------------------------
// Trial coloring of the pair-reduced graph. One iteration is two exchanges:
// picks, then resolution; fixes announce once and persist.

namespace {

constexpr Word kPick = 1;
constexpr Word kFixed = 2;

struct ReducedPair {
  EdgeId edge;
  VertexId a, b;  // the two smallest members
};

class ColoringCore final : public SubProgram {
 public:
  ColoringCore(const Hypergraph* h, Representation repr, VertexId self, bool is_client,
               EdgeId own_edge, std::uint64_t cap)
      : h_(h), repr_(repr), self_(self), is_client_(is_client), own_edge_(own_edge), cap_(cap) {
    hop_ = repr == Representation::vertex_centric ? 1 : 2;
  }

  void start(SubApi& api) override {
    if (is_client_) {
      const auto& mem = h_->edge(own_edge_);
      pair_ = {own_edge_, mem[0], mem[1]};
      return;
    }
    // reduced partners of this vertex
    for (EdgeId e : h_->incident(self_)) {
      const auto& mem = h_->edge(e);
      if (mem.size() < 2) continue;
      VertexId a = mem[0], b = mem[1];
      if (self_ == a) partners_.insert(b);
      if (self_ == b) partners_.insert(a);
    }
    for (const auto& le : api.view().links) link_of_peer_[le.peer] = le.link;
  }

  void vstep(SubApi& api, std::uint32_t vround, const VInbox& inbox) override {
    if (is_client_) {
      client(api, inbox);
      return;
    }
    for (const auto& msg : inbox) {
      Word kind = msg.words.at(0);
      VertexId src = static_cast<VertexId>(msg.words.at(1));
      std::uint32_t color = static_cast<std::uint32_t>(msg.words.at(2));
      if (!partners_.count(src)) continue;
      if (kind == kPick) {
        picks_[src] = color;
      } else if (kind == kFixed) {
        if (!partner_fixed_.count(src)) {
          partner_fixed_[src] = color;
        }
      }
    }
    // act only at exchange boundaries
    if ((vround - 1) % hop_ != 0) return;
    std::uint32_t exchange = (vround - 1) / hop_;
    bool pick_round = exchange % 2 == 0;
    if (fixed_ == 0 && pick_round) {
      iter_ += 1;
      if (iter_ > cap_) {
        api.output() = {-1};
        api.done();
        return;
      }
      // palette 1..deg+1 minus colors fixed by partners
      std::uint32_t palette_size = static_cast<std::uint32_t>(partners_.size()) + 1;
      std::vector<std::uint32_t> free;
      for (std::uint32_t c = 1; c <= palette_size; ++c) {
        bool used = false;
        for (const auto& [p, col] : partner_fixed_) {
          if (col == c) { used = true; break; }
        }
        if (!used) free.push_back(c);
      }
      pick_ = free[api.rng().below(free.size())];
      picks_.clear();
      send_all(api, kPick, pick_);
    } else if (fixed_ == 0 && !pick_round) {
      bool kept = true;
      for (const auto& [p, col] : picks_) {
        if (col == pick_) { kept = false; break; }
      }
      for (const auto& [p, col] : partner_fixed_) {
        if (col == pick_) { kept = false; break; }
      }
      if (kept) {
        fixed_ = pick_;
        send_all(api, kFixed, fixed_);
      }
    }
    if (fixed_ != 0) {
      bool all = true;
      for (VertexId p : partners_) {
        if (!partner_fixed_.count(p)) { all = false; break; }
      }
      if (all) {
        api.output() = {static_cast<std::int64_t>(fixed_)};
        api.done();
      }
    }
  }

 private:
  // uniform wire format (kind, src, color) in both representations
  void send_all(SubApi& api, Word kind, std::uint32_t color) {
    std::vector<Word> payload = {kind, self_, color};
    std::set<LinkId> dests;
    if (repr_ == Representation::vertex_centric) {
      for (VertexId p : partners_) {
        auto it = link_of_peer_.find(p);
        if (it != link_of_peer_.end()) dests.insert(it->second);
      }
    } else {
      for (EdgeId e : h_->incident(self_)) {
        const auto& mem = h_->edge(e);
        if (mem.size() < 2) continue;
        if (mem[0] != self_ && mem[1] != self_) continue;
        NodeId client = static_cast<NodeId>(h_->num_vertices()) + e;
        auto it = link_of_peer_.find(client);
        if (it != link_of_peer_.end()) dests.insert(it->second);
      }
    }
    for (LinkId l : dests) api.send(l, payload);
  }

  void client(SubApi& api, const VInbox& inbox) {
    for (const auto& msg : inbox) {
      VertexId src = static_cast<VertexId>(msg.words.at(1));
      VertexId dst = src == pair_.a ? pair_.b : pair_.a;
      for (const auto& le : api.view().links) {
        if (le.peer == dst) api.send(le.link, msg.words);
      }
      if (msg.words.at(0) == kFixed) pair_fixed_.insert(src);
    }
    if (pair_fixed_.count(pair_.a) && pair_fixed_.count(pair_.b)) api.done();
  }

  const Hypergraph* h_;
  Representation repr_;
  VertexId self_;
  bool is_client_;
  EdgeId own_edge_;
  std::uint64_t cap_;
  std::uint32_t hop_;
  std::set<VertexId> partners_;
  std::map<NodeId, LinkId> link_of_peer_;
  std::map<VertexId, std::uint32_t> picks_;
  std::map<VertexId, std::uint32_t> partner_fixed_;
  std::set<VertexId> pair_fixed_;
  std::uint32_t pick_ = 0;
  std::uint32_t fixed_ = 0;
  std::uint64_t iter_ = 0;
  ReducedPair pair_{0, 0, 0};
};

}  // namespace

ColoringResult hyper_coloring(const Hypergraph& h, const SymOptions& opt) {
  ColoringResult res;
  for (const auto& e : h.edges()) {
    if (e.size() < 2) throw Error("hyper_coloring: singleton hyperedge is uncolorable");
  }
  Topology topo = Topology::from_hypergraph(h, opt.repr);
  Session session(topo, opt.mode, opt.seed);
  std::uint64_t cap = 50 * (ceil_log2(std::max<std::size_t>(2, h.num_vertices())) + 2);

  std::vector<std::vector<ContainerView>> views(topo.num_nodes());
  for (NodeId v = 0; v < topo.num_nodes(); ++v) {
    ContainerView cv;
    cv.tag = 0;
    for (const auto& le : topo.links_of(v)) cv.links.push_back(le);
    views[v].push_back(std::move(cv));
  }
  RunOptions ro;
  ro.max_rounds = 40 * cap + 400;
  auto mr = run_multiplexed(session, views,
                            [&](NodeId v, const ContainerView&) {
                              bool is_client = topo.role(v) == Role::client;
                              EdgeId own = is_client
                                               ? static_cast<EdgeId>(v - h.num_vertices())
                                               : 0;
                              return std::make_unique<ColoringCore>(
                                  &h, opt.repr, static_cast<VertexId>(v), is_client, own, cap);
                            },
                            ro);
  res.trace = session.total();
  res.colors.assign(h.num_vertices(), 0);
  if (!mr.trace.all_halted) {
    res.timed_out = true;
    res.anomaly = "coloring hit the round cap";
  }
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    for (const auto& [tag, out] : mr.outputs[v]) {
      if (out.empty() || out[0] < 0) {
        res.timed_out = true;
      } else {
        res.colors[v] = static_cast<std::uint32_t>(out[0]);
        res.max_color = std::max(res.max_color, res.colors[v]);
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Maximal matching: Luby on the line graph over the server-client network.

namespace {

constexpr Word kMPrio = 1;
constexpr Word kMMax = 2;
constexpr Word kMJoined = 3;
constexpr Word kMOut = 4;
constexpr Word kMDead = 5;

class MatchClient final : public SubProgram {
 public:
  MatchClient(EdgeId id, std::uint64_t cap, std::uint32_t bits, std::uint64_t m4)
      : id_(id), cap_(cap), bits_(bits), m4_(m4) {}

  void vstep(SubApi& api, std::uint32_t vround, const VInbox& inbox) override {
    for (const auto& msg : inbox) {
      if (msg.words.at(0) == kMMax) {
        std::uint64_t p = read_wide(msg.words, 1, bits_, 4);
        EdgeId who = static_cast<EdgeId>(msg.words.at(5));
        maxes_.emplace_back(p, who);
      } else if (msg.words.at(0) == kMDead) {
        member_dead_ = true;
      }
    }
    std::uint32_t slot = (vround - 1) % 4;
    if (slot == 0) {
      if (decided_) {
        api.done();
        return;
      }
      if (member_dead_) {
        // the edge intersects a chosen one
        for (const auto& le : api.view().links) api.send(le.link, {kMOut});
        api.output() = {0};
        decided_ = true;
        return;
      }
      iter_ += 1;
      if (iter_ > cap_) {
        api.output() = {-1};
        decided_ = true;
        return;
      }
      prio_ = api.rng().range(1, m4_);
      maxes_.clear();
      std::vector<Word> payload = {kMPrio};
      push_wide(payload, prio_, bits_, 4);
      for (const auto& le : api.view().links) api.send(le.link, payload);
    } else if (slot == 2) {
      if (decided_) return;
      bool best = !maxes_.empty();
      for (auto [p, who] : maxes_) {
        if (std::make_pair(p, who) > std::make_pair(prio_, id_)) { best = false; break; }
      }
      if (best) {
        for (const auto& le : api.view().links) api.send(le.link, {kMJoined});
        api.output() = {1};
        decided_ = true;
      }
    }
  }

 private:
  EdgeId id_;
  std::uint64_t cap_;
  std::uint32_t bits_;
  std::uint64_t m4_;
  std::uint64_t prio_ = 0;
  std::uint64_t iter_ = 0;
  bool decided_ = false;
  bool member_dead_ = false;
  std::vector<std::pair<std::uint64_t, EdgeId>> maxes_;
};

class MatchServer final : public SubProgram {
 public:
  explicit MatchServer(std::uint32_t bits, std::size_t n) : bits_(bits), n_(n) {}

  void start(SubApi& api) override { expected_ = api.view().links.size(); }

  void vstep(SubApi& api, std::uint32_t vround, const VInbox& inbox) override {
    for (const auto& msg : inbox) {
      Word kind = msg.words.at(0);
      if (kind == kMPrio) {
        std::uint64_t p = read_wide(msg.words, 1, bits_, 4);
        EdgeId who = static_cast<EdgeId>(msg.from - n_);
        prios_.emplace_back(p, who);
      } else if (kind == kMJoined) {
        dead_ = true;
        decided_ += 1;
      } else if (kind == kMOut) {
        decided_ += 1;
      }
    }
    std::uint32_t slot = (vround - 1) % 4;
    if (slot == 1 && !prios_.empty()) {
      auto mx = *std::max_element(prios_.begin(), prios_.end());
      std::vector<Word> payload = {kMMax};
      push_wide(payload, mx.first, bits_, 4);
      payload.push_back(mx.second);
      for (const auto& le : api.view().links) api.send(le.link, payload);
      prios_.clear();
    }
    if (slot == 3 && dead_ && !announced_dead_) {
      announced_dead_ = true;
      for (const auto& le : api.view().links) api.send(le.link, {kMDead});
    }
    if (decided_ >= expected_ && (!dead_ || announced_dead_)) {
      api.done();
    }
    if (expected_ == 0) api.done();
  }

 private:
  std::uint32_t bits_;
  std::size_t n_;
  std::size_t expected_ = 0;
  std::size_t decided_ = 0;
  bool dead_ = false;
  bool announced_dead_ = false;
  std::vector<std::pair<std::uint64_t, EdgeId>> prios_;
};

}  // namespace

MatchingResult maximal_matching(const Hypergraph& h, Mode mode, std::uint64_t seed) {
  Topology topo = Topology::from_hypergraph(h, Representation::server_client);
  Session session(topo, mode, seed);
  std::uint64_t cap = 50 * (ceil_log2(std::max<std::size_t>(2, h.num_edges() + 2)) + 2);
  std::uint32_t bits = word_bits(topo.id_space());
  std::uint64_t m = std::max<std::uint64_t>(2, h.num_edges());
  std::uint64_t m4 = m * m * m * m;

  std::vector<std::vector<ContainerView>> views(topo.num_nodes());
  for (NodeId v = 0; v < topo.num_nodes(); ++v) {
    ContainerView cv;
    cv.tag = 0;
    for (const auto& le : topo.links_of(v)) cv.links.push_back(le);
    views[v].push_back(std::move(cv));
  }
  RunOptions ro;
  ro.max_rounds = 50 * cap + 500;
  auto mr = run_multiplexed(session, views,
                            [&](NodeId v, const ContainerView&) -> std::unique_ptr<SubProgram> {
                              if (topo.role(v) == Role::client) {
                                return std::make_unique<MatchClient>(
                                    static_cast<EdgeId>(v - h.num_vertices()), cap, bits, m4);
                              }
                              return std::make_unique<MatchServer>(bits, h.num_vertices());
                            },
                            ro);
  MatchingResult res;
  res.trace = session.total();
  if (!mr.trace.all_halted) res.timed_out = true;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    NodeId node = static_cast<NodeId>(h.num_vertices() + e);
    for (const auto& [tag, out] : mr.outputs[node]) {
      if (out.empty() || out[0] < 0) {
        res.timed_out = true;
      } else if (out[0] == 1) {
        res.chosen.push_back(e);
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Maximal clique: the minimum-id node coordinates Luby on the complement of
// its neighborhood. Five exchanges per iteration; the server-client
// representation relays each exchange through the shared clients.

namespace {

constexpr Word kAssign = 1;   // (kAssign, slot, dst, prio, active_count)
constexpr Word kPrioB = 2;    // (kPrioB, slot, src, prio)
constexpr Word kMarkB = 3;    // (kMarkB, slot, src, bit)
constexpr Word kCountB = 4;   // (kCountB, slot, src, marked_count)
constexpr Word kStatusB = 5;  // (kStatusB, slot, src, status) 1=joined 2=left 0=active
constexpr Word kVDone = 6;    // (kVDone, slot, src)

class CliqueCore final : public SubProgram {
 public:
  CliqueCore(const Hypergraph* h, Representation repr, NodeId coord, VertexId self,
             bool is_client, EdgeId own_edge, std::uint64_t cap)
      : h_(h), repr_(repr), coord_(coord), self_(self), is_client_(is_client),
        own_edge_(own_edge), cap_(cap) {
    hop_ = repr == Representation::vertex_centric ? 1 : 2;
  }

  void start(SubApi& api) override {
    for (const auto& le : api.view().links) link_of_peer_[le.peer] = le.link;
    if (is_client_) {
      for (VertexId u : h_->edge(own_edge_)) members_.insert(u);
      return;
    }
    if (repr_ == Representation::vertex_centric) {
      for (const auto& le : api.view().links) neighbors_.insert(static_cast<VertexId>(le.peer));
    } else {
      for (EdgeId e : h_->incident(self_)) {
        for (VertexId u : h_->edge(e)) {
          if (u != self_) neighbors_.insert(u);
        }
      }
    }
    if (self_ == coord_) {
      role_ = Role::coordinator;
      for (VertexId u : neighbors_) active_.insert(u);
      in_clique_ = true;
    } else if (neighbors_.count(static_cast<VertexId>(coord_))) {
      role_ = Role::member;
    } else {
      role_ = Role::bystander;
    }
  }

  void vstep(SubApi& api, std::uint32_t vround, const VInbox& inbox) override {
    if (is_client_) {
      relay(api, inbox);
      return;
    }
    absorb(inbox);
    if ((vround - 1) % hop_ != 0) return;
    std::uint32_t exchange = (vround - 1) / hop_;

    if (role_ == Role::bystander) {
      broadcast(api, {kVDone, exchange, self_});
      api.output() = {0};
      api.done();
      return;
    }
    std::uint32_t slot = exchange % 5;
    if (role_ == Role::coordinator) {
      coordinator(api, exchange, slot);
    } else {
      member(api, exchange, slot);
    }
  }

 private:
  enum class Role { coordinator, member, bystander };

  void relay(SubApi& api, const VInbox& inbox) {
    for (const auto& msg : inbox) {
      Word kind = msg.words.at(0);
      if (kind == kVDone) {
        done_members_.insert(static_cast<VertexId>(msg.words.at(2)));
      }
      if (kind == kAssign) {
        VertexId dst = static_cast<VertexId>(msg.words.at(2));
        auto it = link_of_peer_.find(dst);
        if (it != link_of_peer_.end()) api.send(it->second, msg.words);
      } else {
        // rebroadcast to all members except the sender
        for (const auto& le : api.view().links) {
          if (le.peer != msg.from) api.send(le.link, msg.words);
        }
      }
    }
    bool all = true;
    for (VertexId u : members_) {
      if (!done_members_.count(u)) { all = false; break; }
    }
    if (all) api.done();
  }

  void absorb(const VInbox& inbox) {
    for (const auto& msg : inbox) {
      Word kind = msg.words.at(0);
      std::uint32_t slot = static_cast<std::uint32_t>(msg.words.at(1));
      if (kind == kAssign) {
        if (static_cast<VertexId>(msg.words.at(2)) == self_) {
          prio_ = msg.words.at(3);
          active_count_ = static_cast<std::uint32_t>(msg.words.at(4));
          have_assign_ = true;
        }
      } else if (kind == kPrioB) {
        seen_prios_[msg.words.at(2)] = {slot, msg.words.at(3)};
      } else if (kind == kMarkB) {
        VertexId src = static_cast<VertexId>(msg.words.at(2));
        if (msg.words.at(3) == 1) marked_seen_.insert(src);
        if (role_ == Role::coordinator) mark_reports_[src] = msg.words.at(3) == 1;
      } else if (kind == kCountB) {
        marked_total_ = static_cast<std::uint32_t>(msg.words.at(3));
        have_count_ = true;
      } else if (kind == kStatusB) {
        VertexId src = static_cast<VertexId>(msg.words.at(2));
        if (role_ == Role::coordinator && msg.words.at(3) != 0) active_.erase(src);
      } else if (kind == kVDone) {
        if (static_cast<NodeId>(msg.words.at(2)) == coord_) done_coord_ = true;
      }
    }
  }

  void broadcast(SubApi& api, std::vector<Word> body) {
    if (repr_ == Representation::vertex_centric) {
      for (const auto& le : link_of_peer_) api.send(le.second, body);
    } else {
      std::set<LinkId> dests;
      for (EdgeId e : h_->incident(self_)) {
        NodeId client = static_cast<NodeId>(h_->num_vertices()) + e;
        auto it = link_of_peer_.find(client);
        if (it != link_of_peer_.end()) dests.insert(it->second);
      }
      for (LinkId l : dests) api.send(l, body);
    }
  }

  void send_to(SubApi& api, VertexId dst, std::vector<Word> body) {
    if (repr_ == Representation::vertex_centric) {
      auto it = link_of_peer_.find(dst);
      if (it != link_of_peer_.end()) api.send(it->second, body);
      return;
    }
    for (EdgeId e : h_->incident(self_)) {
      const auto& mem = h_->edge(e);
      if (!std::binary_search(mem.begin(), mem.end(), dst)) continue;
      NodeId client = static_cast<NodeId>(h_->num_vertices()) + e;
      auto it = link_of_peer_.find(client);
      if (it != link_of_peer_.end()) {
        api.send(it->second, body);
        return;
      }
    }
  }

  void coordinator(SubApi& api, std::uint32_t exchange, std::uint32_t slot) {
    if (slot == 0) {
      if (active_.empty()) {
        broadcast(api, {kVDone, exchange, self_});
        api.output() = {1};
        api.done();
        return;
      }
      iter_ += 1;
      if (iter_ > cap_) {
        broadcast(api, {kVDone, exchange, self_});
        api.output() = {-1};
        api.done();
        return;
      }
      // fresh random permutation of the active members
      std::vector<VertexId> order(active_.begin(), active_.end());
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[api.rng().below(i)]);
      }
      for (std::size_t i = 0; i < order.size(); ++i) {
        send_to(api, order[i],
                {kAssign, exchange, order[i], static_cast<Word>(i + 1),
                 static_cast<Word>(order.size())});
      }
      mark_reports_.clear();
    } else if (slot == 3) {
      std::uint32_t count = 0;
      for (const auto& [src, m] : mark_reports_) {
        if (m) count += 1;
      }
      broadcast(api, {kCountB, exchange, self_, count});
    }
  }

  void member(SubApi& api, std::uint32_t exchange, std::uint32_t slot) {
    if (decided_) return;
    if (slot == 1) {
      if (!have_assign_) {
        // the coordinator is finished or we were dropped: leave quietly
        if (coord_done()) finish(api, exchange, in_clique_);
        return;
      }
      seen_prios_.clear();
      marked_seen_.clear();
      have_count_ = false;
      broadcast(api, {kPrioB, exchange, self_, prio_});
    } else if (slot == 2) {
      if (!have_assign_) return;
      // marked iff the priorities above mine all sit on my neighbors
      std::uint32_t higher = 0;
      for (const auto& [src, sp] : seen_prios_) {
        if (sp.second > prio_) higher += 1;
      }
      marked_ = higher == active_count_ - prio_;
      broadcast(api, {kMarkB, exchange, self_, marked_ ? 1u : 0u});
    } else if (slot == 4) {
      if (!have_assign_ || !have_count_) return;
      std::uint32_t marked_neighbors = 0;
      for (VertexId u : marked_seen_) {
        if (u != self_) marked_neighbors += 1;
      }
      if (marked_) {
        in_clique_ = true;
        broadcast(api, {kStatusB, exchange, self_, 1});
        finish(api, exchange, true);
      } else if (marked_neighbors < marked_total_) {
        // some marked vertex is a complement-neighbor: leave
        broadcast(api, {kStatusB, exchange, self_, 2});
        finish(api, exchange, false);
      } else {
        broadcast(api, {kStatusB, exchange, self_, 0});
      }
      have_assign_ = false;
    }
  }

  bool coord_done() const { return done_coord_; }

  void finish(SubApi& api, std::uint32_t exchange, bool in) {
    broadcast(api, {kVDone, exchange, self_});
    api.output() = {in ? 1 : 0};
    decided_ = true;
    api.done();
  }

  const Hypergraph* h_;
  Representation repr_;
  NodeId coord_;
  VertexId self_;
  bool is_client_;
  EdgeId own_edge_;
  std::uint64_t cap_;
  std::uint32_t hop_;
  Role role_ = Role::bystander;
  std::set<VertexId> neighbors_;
  std::set<VertexId> members_;
  std::map<NodeId, LinkId> link_of_peer_;
  std::set<VertexId> active_;   // coordinator
  std::map<VertexId, bool> mark_reports_;
  std::map<Word, std::pair<std::uint32_t, Word>> seen_prios_;
  std::set<VertexId> marked_seen_;
  std::set<VertexId> done_members_;
  std::uint64_t prio_ = 0;
  std::uint32_t active_count_ = 0;
  std::uint32_t marked_total_ = 0;
  bool have_assign_ = false;
  bool have_count_ = false;
  bool marked_ = false;
  bool in_clique_ = false;
  bool decided_ = false;
  bool done_coord_ = false;
  std::uint64_t iter_ = 0;
};

}  // namespace

CliqueResult maximal_clique(const Hypergraph& h, const SymOptions& opt) {
  CliqueResult res;
  Topology topo = Topology::from_hypergraph(h, opt.repr);
  Session session(topo, opt.mode, opt.seed);

  // pick the minimum-id node by flooding
  auto comp = lib::connected_components(session, std::vector<bool>(topo.num_nodes(), true));
  NodeId coord = kNoNode;
  bool connected = true;
  for (NodeId v = 0; v < h.num_vertices(); ++v) {
    if (comp.label[v] != comp.label[0]) connected = false;
  }
  if (!connected) {
    res.anomaly = "maximal_clique requires a connected server graph";
    res.timed_out = true;
    return res;
  }
  coord = static_cast<NodeId>(comp.label[0]);

  std::uint64_t cap = 50 * (ceil_log2(std::max<std::size_t>(2, h.num_vertices())) + 2);
  std::vector<std::vector<ContainerView>> views(topo.num_nodes());
  for (NodeId v = 0; v < topo.num_nodes(); ++v) {
    ContainerView cv;
    cv.tag = 0;
    for (const auto& le : topo.links_of(v)) cv.links.push_back(le);
    views[v].push_back(std::move(cv));
  }
  RunOptions ro;
  ro.max_rounds = 100 * cap + 1000;
  auto mr = run_multiplexed(session, views,
                            [&](NodeId v, const ContainerView&) {
                              bool is_client = topo.role(v) == Role::client;
                              EdgeId own = is_client
                                               ? static_cast<EdgeId>(v - h.num_vertices())
                                               : 0;
                              return std::make_unique<CliqueCore>(&h, opt.repr, coord,
                                                                  static_cast<VertexId>(v),
                                                                  is_client, own, cap);
                            },
                            ro);
  res.trace = session.total();
  if (!mr.trace.all_halted) res.timed_out = true;
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    for (const auto& [tag, out] : mr.outputs[v]) {
      if (out.empty() || out[0] < 0) {
        res.timed_out = true;
      } else if (out[0] == 1) {
        res.clique.push_back(v);
      }
    }
  }
  return res;
}

}  // namespace hmis::sym
