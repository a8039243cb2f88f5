#include <algorithm>
#include <cmath>
#include <functional>

#include "engine_internal.hpp"

namespace hmis::engines {

double ZetaPair::value() const {
  if (count == 0) return 0.0;
  return std::exp(std::log(static_cast<double>(count)) / static_cast<double>(j));
}

ZetaPair local_zeta(VertexId v, const std::vector<std::vector<VertexId>>& projections, int d) {
  ZetaPair best;
  std::set<std::vector<VertexId>> seen;
  for (const auto& base : projections) {
    if (base.size() > static_cast<std::size_t>(d)) continue;  // caller pre-filters
    std::vector<VertexId> others;
    for (VertexId u : base) {
      if (u != v) others.push_back(u);
    }
    const std::size_t k = others.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<VertexId> x = {v};
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (std::uint64_t{1} << i)) x.push_back(others[i]);
      }
      std::sort(x.begin(), x.end());
      if (x.size() >= static_cast<std::size_t>(d)) continue;
      if (!seen.insert(x).second) continue;
      // count completions per j
      std::map<std::uint32_t, std::uint64_t> counts;
      for (const auto& p : projections) {
        if (p.size() <= x.size() || p.size() > static_cast<std::size_t>(d)) continue;
        if (std::includes(p.begin(), p.end(), x.begin(), x.end())) {
          counts[static_cast<std::uint32_t>(p.size() - x.size())] += 1;
        }
      }
      for (auto [j, c] : counts) {
        ZetaPair cand{c, j};
        if (cand.value() > best.value() + 1e-12) best = cand;
      }
    }
  }
  return best;
}

namespace {

inline Word pack_status(VStatus s, bool shot) {
  return static_cast<Word>(s) | (static_cast<Word>(shot ? 1 : 0) << 2);
}
inline VStatus unpack_status(Word w) { return static_cast<VStatus>(w & 3); }
inline bool unpack_shot(Word w) { return ((w >> 2) & 1) != 0; }

}  // namespace

bool HyperCore::participates(VertexId v) const {
  if (st_->is_hypernode && v == st_->vertex) {
    if (st_->status != VStatus::undecided) return false;
    if (cfg_->use_shot && !st_->shot) return false;
    if (cfg_->use_sets) {
      return st_->center == tag_ && st_->color == static_cast<std::int32_t>(cfg_->phase_color);
    }
    return true;
  }
  auto it = st_->mirror.find(v);
  if (it == st_->mirror.end()) return false;
  if (it->second.status != VStatus::undecided) return false;
  if (cfg_->use_shot && !it->second.shot) return false;
  if (cfg_->use_sets) {
    return it->second.center == tag_ &&
           it->second.color == static_cast<std::int32_t>(cfg_->phase_color);
  }
  return true;
}

VStatus HyperCore::mirror_status(VertexId v) const {
  if (st_->is_hypernode && v == st_->vertex) return st_->status;
  auto it = st_->mirror.find(v);
  return it == st_->mirror.end() ? VStatus::excluded : it->second.status;
}

bool HyperCore::mirror_shot(VertexId v) const {
  if (st_->is_hypernode && v == st_->vertex) return st_->shot;
  auto it = st_->mirror.find(v);
  return it == st_->mirror.end() ? false : it->second.shot;
}

void HyperCore::setup(SubApi& api) {
  const ContainerView& cv = api.view();
  tag_ = cv.tag;
  is_client_ = !st_->is_hypernode;
  is_vertex_ = st_->is_hypernode && participates(st_->vertex);

  for (const auto& le : cv.links) link_of_peer_[le.peer] = le.link;

  // phase edges: no blocked member, every undecided member participates,
  // at least one undecided member
  pedges_.clear();
  for (const auto& ek : st_->edges) {
    bool ok = true;
    std::size_t undecided = 0;
    for (VertexId u : ek.members) {
      VStatus s = mirror_status(u);
      if (blocks_edge(s)) { ok = false; break; }
      if (s == VStatus::undecided) {
        if (!participates(u)) { ok = false; break; }
        undecided += 1;
      }
    }
    if (ok && undecided > 0) {
      pedges_.push_back({ek.id, &ek, true});
    }
  }

  tracked_.clear();
  if (is_client_) {
    for (const auto& pe : pedges_) {
      for (VertexId u : pe.know->members) {
        if (mirror_status(u) == VStatus::undecided) tracked_.insert(u);
      }
    }
  } else if (is_vertex_) {
    for (const auto& pe : pedges_) {
      for (VertexId u : pe.know->members) {
        if (u != st_->vertex && mirror_status(u) == VStatus::undecided) tracked_.insert(u);
      }
    }
  }
}

std::vector<VertexId> HyperCore::proj(const PhaseEdge& e) const {
  std::vector<VertexId> out;
  for (VertexId u : e.know->members) {
    if (mirror_status(u) == VStatus::undecided) out.push_back(u);
  }
  return out;
}

bool HyperCore::edge_alive(const PhaseEdge& e) const {
  if (!e.alive) return false;
  for (VertexId u : e.know->members) {
    if (blocks_edge(mirror_status(u))) return false;
  }
  return true;
}

void HyperCore::tree_start(SubApi& api) {
  const ContainerView& cv = api.view();
  if (!sent_child_ && cv.parent_link != sim::kNoLink) {
    api.send(cv.parent_link, {kMsgChild, 0});
  }
  sent_child_ = true;
}

void HyperCore::set_status(VStatus s) { st_->status = s; }

void HyperCore::note_vertex_words(std::uint32_t step, VertexId v, const std::vector<Word>& words) {
  if (words.empty()) return;
  auto& bucket = pub_buf_[step];
  if (bucket.count(v)) return;
  bucket[v] = words;
  if (st_->is_hypernode && v == st_->vertex) return;
  auto& mir = st_->mirror[v];
  VStatus s = unpack_status(words[0]);
  if (mir.status == VStatus::undecided && s != VStatus::undecided) mir.status = s;
  mir.shot = unpack_shot(words[0]);
}

void HyperCore::publish(SubApi& api, std::uint32_t step, std::vector<Word> words) {
  note_vertex_words(step, st_->vertex, words);
  std::vector<Word> payload;
  payload.reserve(3 + words.size());
  payload.push_back(kMsgPub);
  payload.push_back(step);
  payload.push_back(static_cast<Word>(words.size()));
  for (Word w : words) payload.push_back(w);

  std::set<LinkId> dests;
  if (cfg_->repr == sim::Representation::vertex_centric) {
    for (VertexId u : tracked_) {
      auto it = link_of_peer_.find(u);
      if (it != link_of_peer_.end()) dests.insert(it->second);
    }
  } else {
    for (const auto& pe : pedges_) {
      // a deciding publish must still go out: judge liveness by the other
      // members, not by the sender's own fresh status
      if (!pe.alive) continue;
      bool dead = false;
      for (VertexId u : pe.know->members) {
        if (u != st_->vertex && blocks_edge(mirror_status(u))) { dead = true; break; }
      }
      if (dead) continue;
      NodeId client = static_cast<NodeId>(cfg_->n) + pe.id;
      auto it = link_of_peer_.find(client);
      if (it != link_of_peer_.end()) dests.insert(it->second);
    }
  }
  for (LinkId l : dests) api.send(l, payload);
}

bool HyperCore::shares_alive_edge(VertexId v) const {
  for (const auto& pe : pedges_) {
    if (!edge_alive(pe)) continue;
    const auto& mem = pe.know->members;
    if (std::binary_search(mem.begin(), mem.end(), v)) return true;
  }
  return false;
}

bool HyperCore::publish_complete(std::uint32_t step) {
  const auto& bucket = pub_buf_[step];
  for (VertexId v : tracked_) {
    if (bucket.count(v)) continue;
    if (expects_publish_from(step, v)) return false;
    // decided vertices are silent only from the step after their decision;
    // a later-step arrival means the words for this step are still in flight
    bool decided_later = false;
    for (auto it = pub_buf_.lower_bound(step); it != pub_buf_.end(); ++it) {
      if (it->second.count(v)) { decided_later = true; break; }
    }
    if (decided_later && mirror_status(v) != VStatus::undecided) return false;
  }
  return true;
}

const std::vector<Word>* HyperCore::step_words(std::uint32_t step, VertexId v) const {
  auto it = pub_buf_.find(step);
  if (it == pub_buf_.end()) return nullptr;
  auto jt = it->second.find(v);
  return jt == it->second.end() ? nullptr : &jt->second;
}

const std::map<VertexId, std::vector<Word>>& HyperCore::step_bucket(std::uint32_t step) {
  return pub_buf_[step];
}

bool HyperCore::absorb(SubApi& api, const sim::VMessage& msg) {
  if (msg.words.size() < 2) return false;
  Word kind = msg.words[0];
  std::uint32_t step = static_cast<std::uint32_t>(msg.words[1]);
  if (kind == kMsgChild) {
    children_.push_back(msg.link);
    return true;
  }
  if (kind == kMsgPub) {
    std::size_t nw = static_cast<std::size_t>(msg.words.at(2));
    std::vector<Word> words(msg.words.begin() + 3, msg.words.begin() + 3 + nw);
    note_vertex_words(step, static_cast<VertexId>(msg.from), words);
    return true;
  }
  if (kind == kMsgRelay) {
    std::size_t count = static_cast<std::size_t>(msg.words.at(2));
    std::size_t pos = 3;
    for (std::size_t i = 0; i < count; ++i) {
      VertexId v = static_cast<VertexId>(msg.words.at(pos++));
      std::size_t nw = static_cast<std::size_t>(msg.words.at(pos++));
      std::vector<Word> words(msg.words.begin() + pos, msg.words.begin() + pos + nw);
      pos += nw;
      note_vertex_words(step, v, words);
    }
    return true;
  }
  if (kind == kMsgUp) {
    up_buf_[step][msg.link] = std::vector<Word>(msg.words.begin() + 2, msg.words.end());
    return true;
  }
  if (kind == kMsgDown) {
    if (!down_buf_.count(step)) {
      down_buf_[step] = std::vector<Word>(msg.words.begin() + 2, msg.words.end());
      std::vector<Word> fwd(msg.words.begin(), msg.words.end());
      for (LinkId c : children_) api.send(c, fwd);
    }
    return true;
  }
  return false;
}

void HyperCore::client_service(SubApi& api) {
  if (!is_client_) return;
  for (auto& [step, bucket] : pub_buf_) {
    if (relayed_.count(step)) continue;
    if (!publish_complete(step)) continue;
    relayed_.insert(step);
    std::vector<Word> payload = {kMsgRelay, step, static_cast<Word>(bucket.size())};
    for (const auto& [v, words] : bucket) {
      payload.push_back(v);
      payload.push_back(static_cast<Word>(words.size()));
      for (Word w : words) payload.push_back(w);
    }
    for (const auto& [peer, link] : link_of_peer_) {
      if (peer < cfg_->n) api.send(link, payload);
    }
  }
}

void HyperCore::agg_send_up_if_ready(
    SubApi& api, std::uint32_t step, const std::vector<Word>& own,
    const std::function<std::vector<Word>(const std::vector<Word>&, const std::vector<Word>&)>&
        comb) {
  if (up_sent_[step]) return;
  const auto& bucket = up_buf_[step];
  for (LinkId c : children_) {
    if (!bucket.count(c)) return;
  }
  up_sent_[step] = true;
  std::vector<Word> acc = own;
  for (LinkId c : children_) acc = comb(acc, up_buf_[step][c]);
  const ContainerView& cv = api.view();
  if (!cv.is_root) {
    std::vector<Word> payload = {kMsgUp, step};
    for (Word w : acc) payload.push_back(w);
    api.send(cv.parent_link, payload);
  } else {
    root_agg_[step] = acc;
  }
}

bool HyperCore::agg_up_complete(std::uint32_t step) const {
  return root_agg_.count(step) != 0;
}

std::vector<Word> HyperCore::agg_root_value(std::uint32_t step) const {
  auto it = root_agg_.find(step);
  return it == root_agg_.end() ? std::vector<Word>{} : it->second;
}

void HyperCore::broadcast_down(SubApi& api, std::uint32_t step, std::vector<Word> words) {
  down_buf_[step] = words;
  std::vector<Word> payload = {kMsgDown, step};
  for (Word w : words) payload.push_back(w);
  for (LinkId c : children_) api.send(c, payload);
}

const std::vector<Word>* HyperCore::down_value(std::uint32_t step) const {
  auto it = down_buf_.find(step);
  return it == down_buf_.end() ? nullptr : &it->second;
}

std::vector<NodeState> init_node_states(const sim::Topology& topo, const Hypergraph& h,
                                        const std::vector<bool>& active) {
  std::vector<NodeState> states(topo.num_nodes());
  const std::size_t n = topo.server_count();
  for (NodeId v = 0; v < topo.num_nodes(); ++v) {
    NodeState& st = states[v];
    st.is_hypernode = topo.role(v) != sim::Role::client;
    if (st.is_hypernode) {
      st.vertex = static_cast<VertexId>(v);
      st.status = active[v] ? VStatus::undecided : VStatus::excluded;
      if (topo.representation() == sim::Representation::vertex_centric) {
        for (EdgeId e : h.incident(st.vertex)) {
          st.edges.push_back({e, h.edge(e)});
        }
      }
    } else {
      st.own_edge = static_cast<EdgeId>(v - n);
      st.edges.push_back({st.own_edge, h.edge(st.own_edge)});
    }
  }
  return states;
}

// ---------------------------------------------------------------------------
// list shipping (server-client): clients send their member lists to members

namespace {

class ListShipCore final : public HyperCore {
 public:
  ListShipCore(NodeState* st, const EngineConfig* cfg) : HyperCore(st, cfg) {}

  void start(SubApi& api) override {
    if (!st_->is_hypernode) {
      const auto& ek = st_->edges.front();
      std::vector<Word> payload = {kMsgList, 0, ek.id, static_cast<Word>(ek.members.size())};
      for (VertexId u : ek.members) payload.push_back(u);
      for (const auto& le : api.view().links) api.send(le.link, payload);
      api.done();
      return;
    }
    st_->edges.clear();
    expected_ = api.view().links.size();
    if (expected_ == 0) api.done();
  }

  void vstep(SubApi& api, std::uint32_t, const sim::VInbox& inbox) override {
    for (const auto& msg : inbox) {
      if (msg.words.size() < 4 || msg.words[0] != kMsgList) continue;
      EdgeKnow ek;
      ek.id = static_cast<EdgeId>(msg.words[2]);
      std::size_t k = static_cast<std::size_t>(msg.words[3]);
      for (std::size_t i = 0; i < k; ++i) {
        ek.members.push_back(static_cast<VertexId>(msg.words.at(4 + i)));
      }
      st_->edges.push_back(std::move(ek));
      got_ += 1;
    }
    if (got_ >= expected_) {
      std::sort(st_->edges.begin(), st_->edges.end(),
                [](const EdgeKnow& a, const EdgeKnow& b) { return a.id < b.id; });
      api.done();
    }
  }

 private:
  std::size_t expected_ = 0;
  std::size_t got_ = 0;
};

// status/color/center exchange reaching every co-member, decided or not
class StatusExchangeCore final : public HyperCore {
 public:
  StatusExchangeCore(NodeState* st, const EngineConfig* cfg) : HyperCore(st, cfg) {}

  void start(SubApi& api) override {
    for (const auto& le : api.view().links) link_of_peer_[le.peer] = le.link;
    if (st_->is_hypernode) {
      for (const auto& ek : st_->edges) {
        for (VertexId u : ek.members) {
          if (u != st_->vertex) expect_.insert(u);
        }
      }
      std::vector<Word> payload = {kMsgPub, 0, 3, pack_status(st_->status, st_->shot),
                                   static_cast<Word>(st_->color + 1),
                                   static_cast<Word>(st_->center == sim::kNoNode
                                                         ? 0
                                                         : st_->center + 1)};
      for (const auto& le : api.view().links) api.send(le.link, payload);
      if (expect_.empty()) api.done();
    } else {
      for (VertexId u : st_->edges.front().members) expect_.insert(u);
      if (expect_.empty()) api.done();
    }
  }

  void vstep(SubApi& api, std::uint32_t, const sim::VInbox& inbox) override {
    for (const auto& msg : inbox) {
      if (msg.words.size() >= 6 && msg.words[0] == kMsgPub) {
        apply(static_cast<VertexId>(msg.from),
              {msg.words[3], msg.words[4], msg.words[5]});
      } else if (msg.words.size() >= 3 && msg.words[0] == kMsgRelay) {
        std::size_t count = static_cast<std::size_t>(msg.words[2]);
        std::size_t pos = 3;
        for (std::size_t i = 0; i < count; ++i) {
          VertexId v = static_cast<VertexId>(msg.words.at(pos++));
          std::size_t nw = static_cast<std::size_t>(msg.words.at(pos++));
          std::vector<Word> w(msg.words.begin() + pos, msg.words.begin() + pos + nw);
          pos += nw;
          apply(v, w);
        }
      }
    }
    if (!st_->is_hypernode && !relayed_out_ && got_.size() >= expect_.size()) {
      relayed_out_ = true;
      std::vector<Word> payload = {kMsgRelay, 0, static_cast<Word>(got_.size())};
      for (const auto& [v, w] : got_) {
        payload.push_back(v);
        payload.push_back(static_cast<Word>(w.size()));
        for (Word x : w) payload.push_back(x);
      }
      for (const auto& le : api.view().links) api.send(le.link, payload);
      api.done();
      return;
    }
    if (st_->is_hypernode && got_.size() >= expect_.size()) api.done();
  }

 private:
  void apply(VertexId v, std::vector<Word> w) {
    if (v == st_->vertex && st_->is_hypernode) return;
    if (got_.count(v)) return;
    got_[v] = w;
    if (!expect_.count(v)) return;
    auto& mir = st_->mirror[v];
    mir.status = unpack_status(w[0]);
    mir.shot = unpack_shot(w[0]);
    mir.color = static_cast<std::int32_t>(w[1]) - 1;
    mir.center = w[2] == 0 ? sim::kNoNode : static_cast<NodeId>(w[2] - 1);
  }

  std::set<VertexId> expect_;
  std::map<VertexId, std::vector<Word>> got_;
  bool relayed_out_ = false;
};

}  // namespace

std::unique_ptr<SubProgram> make_list_ship(NodeState* st, const EngineConfig* cfg) {
  return std::make_unique<ListShipCore>(st, cfg);
}

std::unique_ptr<SubProgram> make_status_exchange(NodeState* st, const EngineConfig* cfg) {
  return std::make_unique<StatusExchangeCore>(st, cfg);
}

}  // namespace hmis::engines
