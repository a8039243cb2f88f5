#include "hmis/netsim.hpp"

#include <algorithm>
#include <sstream>

namespace hmis::sim {

const char* to_string(Representation r) {
  return r == Representation::server_client ? "sc" : "vc";
}

const char* to_string(Regime r) { return r == Regime::local ? "local" : "congest"; }

void Topology::finish(std::size_t id_space) {
  id_space_ = id_space;
  adjacency_.assign(roles_.size(), {});
  for (LinkId l = 0; l < link_ends_.size(); ++l) {
    auto [a, b] = link_ends_[l];
    adjacency_[a].push_back({l, b});
    adjacency_[b].push_back({l, a});
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const LinkEnd& x, const LinkEnd& y) { return x.link < y.link; });
  }
}

std::span<const LinkEnd> Topology::links_of(NodeId v) const { return adjacency_[v]; }

Topology Topology::from_hypergraph(const Hypergraph& h, Representation repr) {
  Topology t;
  t.repr_ = repr;
  t.source_ = &h;
  const std::size_t n = h.num_vertices();
  const std::size_t m = h.num_edges();
  if (repr == Representation::server_client) {
    t.n_servers_ = n;
    t.roles_.assign(n, Role::server);
    t.roles_.insert(t.roles_.end(), m, Role::client);
    for (EdgeId e = 0; e < m; ++e) {
      for (VertexId v : h.edge(e)) {
        t.link_ends_.emplace_back(v, static_cast<NodeId>(n + e));
      }
    }
  } else {
    t.n_servers_ = n;
    t.roles_.assign(n, Role::plain);
    ServerGraph g = server_graph(h);
    for (auto [u, v] : g.edges) t.link_ends_.emplace_back(u, v);
  }
  t.finish(n + m);
  return t;
}

Topology Topology::from_graph(const Graph& g) {
  Topology t;
  t.repr_ = Representation::vertex_centric;
  t.n_servers_ = g.n;
  t.roles_.assign(g.n, Role::plain);
  for (auto [u, v] : g.edges) t.link_ends_.emplace_back(u, v);
  t.finish(g.n);
  return t;
}

Topology Topology::bipartite(std::size_t num_servers, std::size_t num_clients,
                             const std::vector<std::pair<NodeId, NodeId>>& links) {
  Topology t;
  t.repr_ = Representation::server_client;
  t.n_servers_ = num_servers;
  t.roles_.assign(num_servers, Role::server);
  t.roles_.insert(t.roles_.end(), num_clients, Role::client);
  for (auto [s, c] : links) {
    if (s >= num_servers || c < num_servers || c >= num_servers + num_clients) {
      throw Error("bipartite topology: bad link endpoint");
    }
    t.link_ends_.emplace_back(s, c);
  }
  t.finish(num_servers + num_clients);
  return t;
}

void RunTrace::accumulate(const RunTrace& other) {
  rounds += other.rounds;
  messages += other.messages;
  max_payload_bits = std::max(max_payload_bits, other.max_payload_bits);
  violations += other.violations;
  all_halted = other.all_halted;
  quiesced = other.quiesced;
  hit_round_cap = hit_round_cap || other.hit_round_cap;
  for (const auto& ev : other.events) events.push_back(ev);
}

namespace {

struct OutSend {
  LinkId link;
  std::vector<Word> words;
};

class ApiImpl final : public NodeApi {
 public:
  ApiImpl(const Topology& topo, NodeId id, Rng rng, std::vector<std::int64_t>* output)
      : topo_(&topo), id_(id), rng_(rng), output_(output) {}

  NodeId id() const override { return id_; }
  Role role() const override { return topo_->role(id_); }
  std::span<const LinkEnd> links() const override { return topo_->links_of(id_); }
  std::size_t num_network_nodes() const override { return topo_->num_nodes(); }
  Rng& rng() override { return rng_; }
  void send(LinkId link, std::vector<Word> words) override {
    sends.push_back({link, std::move(words)});
  }
  void halt() override { halted = true; }
  std::vector<std::int64_t>& output() override { return *output_; }

  std::vector<OutSend> sends;
  bool halted = false;

 private:
  const Topology* topo_;
  NodeId id_;
  Rng rng_;
  std::vector<std::int64_t>* output_;
};

}  // namespace

RunTrace run(const Topology& topo, const ProgramFactory& factory, const Mode& mode,
             std::uint64_t seed, const RunOptions& options) {
  const std::size_t n = topo.num_nodes();
  RunTrace trace;
  trace.outputs.assign(n, {});
  if (n == 0) {
    trace.all_halted = true;
    return trace;
  }

  std::uint64_t max_rounds = options.max_rounds;
  if (max_rounds == 0) max_rounds = 50 * static_cast<std::uint64_t>(n) * n;

  const std::uint32_t bits = word_bits(topo.id_space());
  const std::uint64_t budget_bits =
      mode.regime == Regime::congest
          ? static_cast<std::uint64_t>(mode.word_factor) * bits
          : std::numeric_limits<std::uint64_t>::max();

  std::vector<std::unique_ptr<Program>> programs(n);
  std::vector<ApiImpl> apis;
  apis.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    programs[v] = factory(v, topo);
    apis.emplace_back(topo, v,
                      Rng::derive(seed, {options.phase_salt, 0x6e6f6465ULL, v}),
                      &trace.outputs[v]);
  }

  std::vector<Inbox> inboxes(n), next_inboxes(n);
  // per-link per-direction word totals for congestion accounting
  std::vector<std::uint64_t> dir_words(2 * topo.num_links(), 0);
  std::vector<std::size_t> touched_dirs;

  std::size_t live = n;
  auto route = [&](NodeId from, ApiImpl& api) {
    for (auto& s : api.sends) {
      NodeId to = topo.link_peer(s.link, from);
      trace.messages += 1;
      auto [a, b] = topo.link(s.link);
      std::size_t dir = 2 * static_cast<std::size_t>(s.link) + (from == a ? 0 : 1);
      if (dir_words[dir] == 0) touched_dirs.push_back(dir);
      dir_words[dir] += s.words.size();
      next_inboxes[to].push_back({s.link, from, std::move(s.words)});
    }
    api.sends.clear();
  };

  // init phase: sends here are delivered in round 1
  for (NodeId v = 0; v < n; ++v) {
    programs[v]->init(apis[v]);
    if (apis[v].halted) live -= 1;
    route(v, apis[v]);
  }

  auto settle_round_accounting = [&]() -> std::uint64_t {
    std::uint64_t sent_words = 0;
    for (std::size_t dir : touched_dirs) {
      std::uint64_t payload_bits = dir_words[dir] * bits;
      trace.max_payload_bits = std::max(trace.max_payload_bits, payload_bits);
      if (payload_bits > budget_bits) {
        trace.violations += 1;
        if (mode.hard_violation) {
          throw Error("CONGEST budget exceeded: " + std::to_string(payload_bits) + " > " +
                      std::to_string(budget_bits) + " bits");
        }
      }
      sent_words += dir_words[dir];
      dir_words[dir] = 0;
    }
    touched_dirs.clear();
    return sent_words;
  };

  std::uint64_t in_flight = settle_round_accounting();

  std::uint32_t idle_streak = in_flight == 0 ? 1 : 0;
  std::uint32_t round = 0;
  while (live > 0 && round < max_rounds) {
    // Nothing in flight for a few rounds: a quiescence-stopped program has
    // reached its fixed point (valid for flooding-style library programs that
    // only send on state change).
    if (options.stop_on_quiescence && idle_streak >= options.quiescence_grace) {
      trace.quiesced = true;
      break;
    }
    round += 1;
    std::swap(inboxes, next_inboxes);
    for (auto& ib : next_inboxes) ib.clear();

    if (options.coordinator) {
      options.coordinator->tick =
          (in_flight == 0 && options.coordinator->queued_words == 0);
    }

    std::uint64_t round_messages = trace.messages;
    for (NodeId v = 0; v < n; ++v) {
      if (apis[v].halted) continue;
      auto& ib = inboxes[v];
      std::sort(ib.begin(), ib.end(),
                [](const InMessage& x, const InMessage& y) { return x.link < y.link; });
      programs[v]->step(apis[v], round, ib);
      if (apis[v].halted) live -= 1;
      route(v, apis[v]);
    }
    in_flight = settle_round_accounting();
    idle_streak = in_flight == 0 ? idle_streak + 1 : 0;
    trace.rounds = round;

    if (options.record_events) {
      std::ostringstream os;
      os << "{\"round\":" << round << ",\"messages\":" << (trace.messages - round_messages)
         << ",\"live\":" << live << "}";
      trace.events.push_back(os.str());
    }
  }
  trace.all_halted = (live == 0);
  trace.hit_round_cap = (live > 0 && round >= max_rounds && !trace.quiesced);
  return trace;
}

RunTrace Session::run_phase(const ProgramFactory& factory, RunOptions options) {
  options.phase_salt = next_phase_salt();
  RunTrace t = run(*topo_, factory, mode_, seed_, options);
  total_.accumulate(t);
  return t;
}

}  // namespace hmis::sim
