#include "hmis/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace hmis::decomp {

using namespace hmis::sim;

namespace {

std::uint32_t ceil_log2(std::uint64_t n) {
  std::uint32_t b = 0;
  while ((std::uint64_t{1} << b) < n) ++b;
  return b;
}

struct Schedule {
  std::uint32_t max_radius = 1;        // B
  double q = 0.5;                      // radius distribution parameter
  std::uint32_t hop_factor = 1;        // 2 in server-client, 1 in vertex-centric
  std::uint32_t iteration_len = 0;
  // per round (1-based): sub-iteration j, step s within it, send span (hops)
  struct Slot {
    std::uint32_t j, s, span;
  };
  std::vector<Slot> slots;

  static Schedule make(std::size_t n_hyper, Representation repr) {
    Schedule sch;
    sch.max_radius = std::max<std::uint32_t>(1, ceil_log2(n_hyper));
    sch.hop_factor = repr == Representation::server_client ? 2 : 1;
    sch.q = n_hyper <= 1
                ? 1.0
                : std::pow(static_cast<double>(n_hyper),
                           -1.0 / static_cast<double>(sch.max_radius));
    for (std::uint32_t j = 1; j <= sch.max_radius; ++j) {
      std::uint32_t span = sch.hop_factor * j;  // sends at steps 1..span
      for (std::uint32_t s = 1; s <= span + 1; ++s) sch.slots.push_back({j, s, span});
    }
    sch.iteration_len = static_cast<std::uint32_t>(sch.slots.size());
    return sch;
  }

  std::uint32_t draw_radius(Rng& rng) const {
    if (q >= 1.0) return max_radius;
    double u = rng.unit();
    double r = 1.0 + std::floor(std::log(1.0 - u) / std::log(q));
    if (r < 1.0) r = 1.0;
    if (r > max_radius) r = max_radius;
    return static_cast<std::uint32_t>(r);
  }
};

struct Mem {
  bool is_hypernode = false;
  bool assigned = false;
  NodeId center = kNoNode;
  std::int32_t color = -1;
  // keyed by (tag, iteration): the same center floods again in later
  // iterations until it wins, producing distinct container subgraphs
  std::map<std::pair<std::uint32_t, std::uint32_t>, ContainerRec> containers;

  ContainerRec& rec(std::uint32_t tag, std::uint32_t color_now) {
    auto key = std::make_pair(tag, color_now);
    auto it = containers.find(key);
    if (it == containers.end()) {
      ContainerRec r;
      r.tag = tag;
      r.color = color_now;
      it = containers.emplace(key, std::move(r)).first;
    }
    return it->second;
  }

  static void add_link(ContainerRec& r, LinkId l) {
    if (std::find(r.links.begin(), r.links.end(), l) == r.links.end()) r.links.push_back(l);
  }
};

// One color iteration in CONGEST: radius classes flood their max id in
// sub-iterations, one id per link per round.
class CongestIteration final : public Program {
 public:
  CongestIteration(Mem* mem, const Schedule* sch, std::uint32_t iteration)
      : mem_(mem), sch_(sch), iteration_(iteration) {}

  void init(NodeApi& api) override {
    if (mem_->is_hypernode && !mem_->assigned) radius_ = sch_->draw_radius(api.rng());
  }

  void step(NodeApi& api, std::uint32_t round, const Inbox& inbox) override {
    const auto& slot = sch_->slots[round - 1];
    if (slot.s == 1) {
      cur_ = 0;
      has_cur_ = false;
      cur_arrival_ = 0;
      if (!mem_->assigned && mem_->is_hypernode && radius_ == slot.j) {
        cur_ = api.id();
        has_cur_ = true;
        cur_arrival_ = 0;
        auto& r = mem_->rec(api.id(), iteration_);
        r.depth = 0;
        r.parent_link = kNoLink;
        for (const auto& le : api.links()) {
          Mem::add_link(r, le.link);
          api.send(le.link, {cur_});
        }
      }
    }
    bool improved = false;
    for (const auto& msg : inbox) {
      Word y = msg.words.at(0);
      std::uint32_t hops = slot.s - 1;
      auto& r = mem_->rec(static_cast<std::uint32_t>(y), iteration_);
      if (r.links.empty() && r.parent_link == kNoLink && r.depth == 0 &&
          static_cast<NodeId>(y) != api.id()) {
        r.parent_link = msg.link;
        r.depth = hops;
      }
      Mem::add_link(r, msg.link);
      if (!has_cur_ || y > cur_) {
        cur_ = y;
        has_cur_ = true;
        cur_arrival_ = hops;
        improved = true;
      }
    }
    bool may_forward = !(mem_->is_hypernode && mem_->assigned);
    if (improved && may_forward && slot.s <= slot.span && slot.s >= 2) {
      auto& r = mem_->rec(static_cast<std::uint32_t>(cur_), iteration_);
      for (const auto& le : api.links()) {
        Mem::add_link(r, le.link);
        api.send(le.link, {cur_});
      }
    }
    if (slot.s == slot.span + 1 && has_cur_ && mem_->is_hypernode && !mem_->assigned) {
      std::uint32_t dist = cur_arrival_ / sch_->hop_factor;
      if (!has_best_ || cur_ > best_id_) {
        best_id_ = cur_;
        best_dist_ = dist;
        best_radius_ = slot.j;
        has_best_ = true;
      }
    }
    if (round == sch_->iteration_len) {
      if (!mem_->assigned && mem_->is_hypernode && has_best_ && best_dist_ < best_radius_) {
        mem_->assigned = true;
        mem_->center = static_cast<NodeId>(best_id_);
        mem_->color = static_cast<std::int32_t>(iteration_);
      }
      api.halt();
    }
  }

 private:
  Mem* mem_;
  const Schedule* sch_;
  std::uint32_t iteration_;
  std::uint32_t radius_ = 0;
  Word cur_ = 0;
  bool has_cur_ = false;
  std::uint32_t cur_arrival_ = 0;
  Word best_id_ = 0;
  std::uint32_t best_dist_ = 0;
  std::uint32_t best_radius_ = 0;
  bool has_best_ = false;
};

// One color iteration in LOCAL: all radius classes flood together; each node
// forwards only pairs not dominated by a larger id with at least the same
// remaining budget (the dominating id reaches every node the pruned one
// would, so set choices are unchanged).
class LocalIteration final : public Program {
 public:
  LocalIteration(Mem* mem, const Schedule* sch, std::uint32_t iteration)
      : mem_(mem), sch_(sch), iteration_(iteration) {}

  void init(NodeApi& api) override {
    if (mem_->is_hypernode && !mem_->assigned) radius_ = sch_->draw_radius(api.rng());
  }

  void step(NodeApi& api, std::uint32_t round, const Inbox& inbox) override {
    const std::uint32_t maxspan = sch_->hop_factor * sch_->max_radius;
    std::vector<std::array<Word, 3>> fwd;  // (id, r, hops at receiver)
    if (round == 1 && !mem_->assigned && mem_->is_hypernode) {
      held_[api.id()] = {radius_, 0};
      auto& r = mem_->rec(api.id(), iteration_);
      r.depth = 0;
      for (const auto& le : api.links()) Mem::add_link(r, le.link);
      fwd.push_back({api.id(), radius_, 1});
    }
    for (const auto& msg : inbox) {
      for (std::size_t i = 0; i + 2 < msg.words.size() + 1 && i + 3 <= msg.words.size(); i += 3) {
        Word y = msg.words[i];
        std::uint32_t r = static_cast<std::uint32_t>(msg.words[i + 1]);
        std::uint32_t d = static_cast<std::uint32_t>(msg.words[i + 2]);
        auto& rec = mem_->rec(static_cast<std::uint32_t>(y), iteration_);
        if (rec.links.empty() && rec.parent_link == kNoLink && rec.depth == 0 &&
            static_cast<NodeId>(y) != api.id()) {
          rec.parent_link = msg.link;
          rec.depth = d;
        }
        Mem::add_link(rec, msg.link);
        if (held_.count(y)) continue;
        held_[y] = {r, d};
        if (d + 1 <= sch_->hop_factor * r) fwd.push_back({y, r, d + 1});
      }
    }
    // Pareto prune: a pair is redundant if a strictly larger id has at least
    // as much remaining budget here.
    std::vector<std::array<Word, 3>> keep;
    for (const auto& p : fwd) {
      std::uint32_t budget = sch_->hop_factor * static_cast<std::uint32_t>(p[1]) -
                             (static_cast<std::uint32_t>(p[2]) - 1);
      bool dominated = false;
      for (const auto& [id, hr] : held_) {
        if (id <= p[0]) continue;
        std::uint32_t b2 = sch_->hop_factor * hr.first >= hr.second
                               ? sch_->hop_factor * hr.first - hr.second
                               : 0;
        if (b2 >= budget) { dominated = true; break; }
      }
      if (!dominated) keep.push_back(p);
    }
    std::sort(keep.begin(), keep.end());
    bool may_forward = !(mem_->is_hypernode && mem_->assigned);
    if (may_forward && !keep.empty() && round <= maxspan) {
      std::vector<Word> payload;
      payload.reserve(3 * keep.size());
      for (const auto& p : keep) {
        auto& rec = mem_->rec(static_cast<std::uint32_t>(p[0]), iteration_);
        for (const auto& le : api.links()) Mem::add_link(rec, le.link);
        payload.push_back(p[0]);
        payload.push_back(p[1]);
        payload.push_back(p[2]);
      }
      for (const auto& le : api.links()) api.send(le.link, payload);
    }
    if (round == maxspan + 1) {
      if (!mem_->assigned && mem_->is_hypernode) {
        bool has_best = false;
        Word best_id = 0;
        std::uint32_t best_dist = 0, best_radius = 0;
        for (const auto& [id, hr] : held_) {
          std::uint32_t dist = hr.second / sch_->hop_factor;
          if (dist > hr.first) continue;
          if (!has_best || id > best_id) {
            best_id = id;
            best_dist = dist;
            best_radius = hr.first;
            has_best = true;
          }
        }
        if (has_best && best_dist < best_radius) {
          mem_->assigned = true;
          mem_->center = static_cast<NodeId>(best_id);
          mem_->color = static_cast<std::int32_t>(iteration_);
        }
      }
      api.halt();
    }
  }

 private:
  Mem* mem_;
  const Schedule* sch_;
  std::uint32_t iteration_;
  std::uint32_t radius_ = 0;
  std::map<Word, std::pair<std::uint32_t, std::uint32_t>> held_;  // id -> (r, hops)
};

}  // namespace

const ContainerRec* Decomposition::find(NodeId node, std::uint32_t tag,
                                        std::uint32_t color) const {
  for (const auto& rec : node_containers[node]) {
    if (rec.tag == tag && rec.color == color) return &rec;
  }
  return nullptr;
}

Decomposition linial_saks(Session& session, Params params) {
  const Topology& topo = session.topology();
  const std::size_t num_nodes = topo.num_nodes();
  const std::size_t n_hyper = topo.server_count();
  Schedule sch = Schedule::make(n_hyper, topo.representation());

  std::uint32_t cap = params.iteration_cap;
  if (cap == 0) cap = std::max<std::uint32_t>(6, 8 * std::max<std::uint32_t>(1, ceil_log2(n_hyper)));

  std::vector<Mem> mems(num_nodes);
  for (NodeId v = 0; v < num_nodes; ++v) {
    mems[v].is_hypernode = topo.role(v) != Role::client;
  }

  const bool local = session.mode().regime == Regime::local;
  const std::uint32_t phase_len =
      local ? sch.hop_factor * sch.max_radius + 1 : sch.iteration_len;

  std::uint32_t it = 0;
  bool all_assigned = false;
  for (; it < cap && !all_assigned; ++it) {
    RunOptions opt;
    opt.max_rounds = phase_len + 2;
    session.run_phase(
        [&, it](NodeId v, const Topology&) -> std::unique_ptr<Program> {
          if (local) return std::make_unique<LocalIteration>(&mems[v], &sch, it);
          return std::make_unique<CongestIteration>(&mems[v], &sch, it);
        },
        opt);
    all_assigned = true;
    for (NodeId v = 0; v < num_nodes; ++v) {
      if (mems[v].is_hypernode && !mems[v].assigned) { all_assigned = false; break; }
    }
  }

  Decomposition d;
  d.iterations = it;
  d.complete = all_assigned;
  d.center.assign(n_hyper, kNoNode);
  d.color.assign(n_hyper, -1);
  d.node_containers.resize(num_nodes);
  std::uint32_t max_color = 0;
  for (NodeId v = 0; v < num_nodes; ++v) {
    Mem& m = mems[v];
    if (m.is_hypernode && v < n_hyper) {
      if (m.assigned) {
        d.center[v] = m.center;
        d.color[v] = m.color;
        max_color = std::max<std::uint32_t>(max_color, static_cast<std::uint32_t>(m.color) + 1);
      } else {
        d.unassigned.push_back(v);
      }
    }
    auto& out = d.node_containers[v];
    out.reserve(m.containers.size());
    for (auto& [key, rec] : m.containers) {
      std::sort(rec.links.begin(), rec.links.end());
      out.push_back(std::move(rec));
    }
  }
  d.num_colors = max_color;
  return d;
}

Report verify_decomposition(const Decomposition& d, const Hypergraph& h,
                            const Topology& topo, double diameter_factor,
                            double multiplicity_factor) {
  Report rep;
  const std::size_t n = h.num_vertices();
  const double logn = std::log2(std::max<double>(2.0, static_cast<double>(n)));

  // partition-ness
  for (VertexId v = 0; v < n; ++v) {
    if (d.center[v] == kNoNode || d.color[v] < 0) {
      rep.violations.push_back("vertex " + std::to_string(v) + " unassigned");
    }
  }

  // containers of actual sets, keyed by (center, color); floods from
  // iterations a center lost are not among the decomposition's G_i
  std::set<std::pair<std::uint32_t, std::uint32_t>> set_keys;
  for (VertexId v = 0; v < n; ++v) {
    if (d.center[v] != kNoNode && d.color[v] >= 0) {
      set_keys.insert({d.center[v], static_cast<std::uint32_t>(d.color[v])});
    }
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<NodeId>> container_nodes;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::set<LinkId>> container_links;
  for (NodeId node = 0; node < d.node_containers.size(); ++node) {
    for (const auto& rec : d.node_containers[node]) {
      auto key = std::make_pair(rec.tag, rec.color);
      if (!set_keys.count(key)) continue;
      container_nodes[key].push_back(node);
      for (LinkId l : rec.links) container_links[key].insert(l);
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (d.center[v] == kNoNode) continue;
    if (!d.find(topo.server_node(v), d.center[v], static_cast<std::uint32_t>(d.color[v]))) {
      rep.violations.push_back("vertex " + std::to_string(v) +
                               " not inside its container G_" + std::to_string(d.center[v]));
    }
  }

  // container connectivity and eccentricity from the center
  const std::uint32_t ecc_bound =
      static_cast<std::uint32_t>(diameter_factor * logn) + 1;
  for (const auto& [key, nodes] : container_nodes) {
    const std::uint32_t tag = key.first;
    const auto& links = container_links[key];
    std::map<NodeId, std::vector<NodeId>> adj;
    for (LinkId l : links) {
      auto [a, b] = topo.link(l);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::map<NodeId, std::uint32_t> dist;
    std::queue<NodeId> q;
    dist[tag] = 0;
    q.push(tag);
    std::uint32_t ecc = 0;
    while (!q.empty()) {
      NodeId u = q.front();
      q.pop();
      for (NodeId w : adj[u]) {
        if (!dist.count(w)) {
          dist[w] = dist[u] + 1;
          ecc = std::max(ecc, dist[w]);
          q.push(w);
        }
      }
    }
    rep.max_eccentricity = std::max(rep.max_eccentricity, ecc);
    for (NodeId w : nodes) {
      if (!dist.count(w)) {
        rep.violations.push_back("container G_" + std::to_string(tag) + " node " +
                                 std::to_string(w) + " unreachable from center");
      }
    }
    if (ecc > ecc_bound) {
      rep.violations.push_back("container G_" + std::to_string(tag) + " eccentricity " +
                               std::to_string(ecc) + " exceeds " + std::to_string(ecc_bound));
    }
  }

  // same-color hyperedge disjointness
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto& mem = h.edge(e);
    for (std::size_t i = 0; i < mem.size(); ++i) {
      for (std::size_t j = i + 1; j < mem.size(); ++j) {
        VertexId a = mem[i], b = mem[j];
        if (d.center[a] == kNoNode || d.center[b] == kNoNode) continue;
        if (d.color[a] == d.color[b] && d.center[a] != d.center[b]) {
          rep.violations.push_back("edge " + std::to_string(e) + " spans same-color sets S_" +
                                   std::to_string(d.center[a]) + ", S_" +
                                   std::to_string(d.center[b]));
        }
      }
    }
  }

  // link multiplicity
  std::vector<std::set<std::pair<std::uint32_t, std::uint32_t>>> per_link(topo.num_links());
  for (const auto& [key, links] : container_links) {
    for (LinkId l : links) per_link[l].insert(key);
  }
  const std::uint32_t mult_bound =
      static_cast<std::uint32_t>(multiplicity_factor * logn * logn * logn) + 1;
  for (LinkId l = 0; l < per_link.size(); ++l) {
    std::uint32_t count = static_cast<std::uint32_t>(per_link[l].size());
    rep.max_link_multiplicity = std::max(rep.max_link_multiplicity, count);
    if (rep.link_multiplicity_histogram.size() <= count) {
      rep.link_multiplicity_histogram.resize(count + 1, 0);
    }
    rep.link_multiplicity_histogram[count] += 1;
    if (count > mult_bound) {
      rep.violations.push_back("link " + std::to_string(l) + " multiplicity " +
                               std::to_string(count) + " exceeds " + std::to_string(mult_bound));
    }
  }
  return rep;
}

}  // namespace hmis::decomp
