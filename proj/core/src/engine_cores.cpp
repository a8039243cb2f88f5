#include <algorithm>
#include <cmath>

#include "engine_internal.hpp"
#include "hmis/mis_rules.hpp"

namespace hmis::engines {

namespace {

inline Word pack(VStatus s, bool shot) {
  return static_cast<Word>(s) | (static_cast<Word>(shot ? 1 : 0) << 2);
}

// or / max-by-zeta-value combiner over [active, count, j]
std::vector<Word> agg_combine_zeta(const std::vector<Word>& a, const std::vector<Word>& b) {
  std::vector<Word> out = a;
  out[0] = a[0] | b[0];
  ZetaPair pa{a[1], static_cast<std::uint32_t>(a[2])};
  ZetaPair pb{b[1], static_cast<std::uint32_t>(b[2])};
  if (pb.value() > pa.value() + 1e-12) {
    out[1] = b[1];
    out[2] = b[2];
  }
  return out;
}

// --------------------------------------------------------------------------
// The marking engine shared by the standalone constant-dimension core and the
// recursion: repeatedly compute zeta on the working sub-hypergraph, mark with
// p = 1/(2^{d+1} zeta), resolve fully-marked edges, then clean up contained
// edges, singleton edges and isolated vertices.
//
// Step layout per iteration (relative to a base): 0 agg, 1 mark, 2 final,
// 3 kill, 4 singleton, 5 isolated.
struct BlConfig {
  int d = 3;
  std::uint64_t iter_cap = 0;
  bool restricted = false;  // only run on the star set (recursion subphase)
};

constexpr Word kDownStop = 0;
constexpr Word kDownZeta = 1;
constexpr Word kDownTimeout = 2;

class BlMachine {
 public:
  enum class Stage { agg, mark, final_mark, kill, singleton, isolated, stopped };

  BlConfig cfg;
  std::uint32_t base = 0;
  Stage stage = Stage::agg;
  std::uint64_t iter = 0;
  bool finished = false;
  bool timed_out = false;
  std::uint64_t iterations_done = 0;

  std::uint32_t step(int offset) const { return base + static_cast<std::uint32_t>(offset); }
  void next_iteration() {
    base += 6;
    iter += 1;
    stage = Stage::agg;
  }
};

// Role-generic core driving one BlMachine. Also usable as the subphase engine
// of the recursion via the star restriction.
class BeameLubyCore : public HyperCore {
 public:
  BeameLubyCore(NodeState* st, const EngineConfig* cfg) : HyperCore(st, cfg) {
    bl_.cfg.d = cfg->dim_param;
    bl_.cfg.iter_cap = cfg->bl_iter_cap;
  }

  void start(SubApi& api) override {
    setup(api);
    tree_start(api);
  }

  void vstep(SubApi& api, std::uint32_t vround, const sim::VInbox& inbox) override {
    for (const auto& msg : inbox) absorb(api, msg);
    if (vround < 1) return;
    client_service(api);
    // pump as far as the available messages allow
    while (true) {
      auto before = std::make_pair(bl_.stage, bl_.iter);
      drive_bl(api, bl_, nullptr);
      if (bl_.finished || before == std::make_pair(bl_.stage, bl_.iter)) break;
    }
    client_service(api);
    if (bl_.finished) {
      if (st_->is_hypernode) {
        api.output() = {static_cast<std::int64_t>(st_->status),
                        static_cast<std::int64_t>(bl_.iterations_done),
                        bl_.timed_out ? 1 : 0};
      }
      api.done();
    }
  }

 protected:
  // star filter for restricted subphases: nullptr = unrestricted
  bool in_star(const std::set<VertexId>* star, VertexId v) const {
    return star == nullptr || star->count(v) != 0;
  }

  bool bl_edge_in_play(const PhaseEdge& pe, const std::set<VertexId>* star) const {
    if (!edge_alive(pe)) return false;
    auto p = proj(pe);
    if (p.empty()) return false;
    for (VertexId u : p) {
      if (!in_star(star, u)) return false;
    }
    return true;
  }

  bool bl_vertex_active(const std::set<VertexId>* star) const {
    return is_vertex_ && st_->status == VStatus::undecided &&
           in_star(star, st_->vertex);
  }

  // One pump of the machine; returns without blocking. `star` restricts the
  // vertex set (recursion subphase).
  void drive_bl(SubApi& api, BlMachine& bl, const std::set<VertexId>* star) {
    if (bl.finished) return;
    const ContainerView& cv = api.view();
    switch (bl.stage) {
      case BlMachine::Stage::agg: {
        std::vector<Word> own = {0, 0, 1};
        if (bl_vertex_active(star)) {
          own[0] = 1;
          std::vector<std::vector<VertexId>> projections;
          for (const auto& pe : pedges_) {
            if (bl_edge_in_play(pe, star)) projections.push_back(proj(pe));
          }
          ZetaPair z = local_zeta(st_->vertex, projections, bl.cfg.d);
          own[1] = z.count;
          own[2] = z.j;
        }
        agg_send_up_if_ready(api, bl.step(0), own, agg_combine_zeta);
        if (cv.is_root && agg_up_complete(bl.step(0)) && !down_value(bl.step(0))) {
          auto v = agg_root_value(bl.step(0));
          std::vector<Word> down;
          if (v[0] == 0) {
            down = {kDownStop};
          } else if (bl.cfg.iter_cap > 0 && bl.iter >= bl.cfg.iter_cap) {
            down = {kDownTimeout};
          } else {
            down = {kDownZeta, v[1], v[2]};
          }
          broadcast_down(api, bl.step(0), down);
        }
        const auto* d = down_value(bl.step(0));
        if (!d) return;
        if ((*d)[0] == kDownStop || (*d)[0] == kDownTimeout) {
          bl.timed_out = (*d)[0] == kDownTimeout;
          bl.finished = true;
          bl.stage = BlMachine::Stage::stopped;
          return;
        }
        ZetaPair z{(*d)[1], static_cast<std::uint32_t>((*d)[2])};
        double zeta = z.value();
        double p = zeta <= 0.0 ? 1.0
                               : 1.0 / (std::pow(2.0, bl.cfg.d + 1) * zeta);
        if (p > 1.0) p = 1.0;
        if (bl_vertex_active(star)) {
          marked_ = api.rng().bernoulli(p);
          publish(api, bl.step(1), {pack(st_->status, st_->shot), marked_ ? 1u : 0u});
        }
        bl.stage = BlMachine::Stage::mark;
        return;
      }
      case BlMachine::Stage::mark: {
        if (!publish_complete(bl.step(1))) return;
        if (bl_vertex_active(star)) {
          bool final_mark = marked_;
          if (marked_) {
            for (const auto& pe : pedges_) {
              if (!bl_edge_in_play(pe, star)) continue;
              if (fully_marked(pe, bl.step(1), star)) { final_mark = false; break; }
            }
          }
          if (final_mark) set_status(VStatus::in_set);
          publish(api, bl.step(2), {pack(st_->status, st_->shot), final_mark ? 1u : 0u});
        }
        bl.stage = BlMachine::Stage::final_mark;
        return;
      }
      case BlMachine::Stage::final_mark: {
        if (!publish_complete(bl.step(2))) return;
        if (bl_vertex_active(star)) {
          std::vector<Word> kills = compute_kills(star);
          std::vector<Word> words = {pack(st_->status, st_->shot),
                                     static_cast<Word>(kills.size())};
          for (Word k : kills) words.push_back(k);
          publish(api, bl.step(3), words);
        }
        bl.stage = BlMachine::Stage::kill;
        return;
      }
      case BlMachine::Stage::kill: {
        if (!publish_complete(bl.step(3))) return;
        apply_kills(bl.step(3));
        if (bl_vertex_active(star)) {
          for (const auto& pe : pedges_) {
            if (!bl_edge_in_play(pe, star)) continue;
            auto p = proj(pe);
            if (p.size() == 1 && p[0] == st_->vertex) {
              set_status(VStatus::out);
              break;
            }
          }
          publish(api, bl.step(4), {pack(st_->status, st_->shot)});
        }
        bl.stage = BlMachine::Stage::singleton;
        return;
      }
      case BlMachine::Stage::singleton: {
        if (!publish_complete(bl.step(4))) return;
        if (bl_vertex_active(star)) {
          bool isolated = true;
          for (const auto& pe : pedges_) {
            if (bl_edge_in_play(pe, star)) { isolated = false; break; }
          }
          if (isolated) set_status(VStatus::in_set);
          publish(api, bl.step(5), {pack(st_->status, st_->shot)});
        }
        bl.stage = BlMachine::Stage::isolated;
        return;
      }
      case BlMachine::Stage::isolated: {
        if (!publish_complete(bl.step(5))) return;
        bl.iterations_done += 1;
        bl.next_iteration();
        return;
      }
      case BlMachine::Stage::stopped:
        return;
    }
  }

  bool fully_marked(const PhaseEdge& pe, std::uint32_t mark_step,
                    const std::set<VertexId>* star) {
    for (VertexId u : proj(pe)) {
      if (!in_star(star, u)) return false;
      const auto* w = step_words(mark_step, u);
      if (!w || w->size() < 2 || (*w)[1] == 0) return false;
    }
    return true;
  }

  // edges of mine properly containing another current edge (superset dies);
  // equal projections dedup to the lowest edge id
  std::vector<Word> compute_kills(const std::set<VertexId>* star) {
    std::vector<Word> kills;
    for (const auto& e : pedges_) {
      if (!bl_edge_in_play(e, star)) continue;
      auto pe = proj(e);
      for (const auto& f : pedges_) {
        if (f.id == e.id || !bl_edge_in_play(f, star)) continue;
        auto pf = proj(f);
        if (pf.size() > pe.size()) continue;
        if (pf.size() == pe.size() && f.id > e.id) continue;
        if (std::includes(pe.begin(), pe.end(), pf.begin(), pf.end())) {
          kills.push_back(e.id);
          break;
        }
      }
    }
    return kills;
  }

  void apply_kills(std::uint32_t step) {
    for (const auto& [v, words] : step_bucket(step)) {
      if (words.size() < 2) continue;
      std::size_t k = static_cast<std::size_t>(words[1]);
      for (std::size_t i = 0; i < k && 2 + i < words.size(); ++i) {
        EdgeId dead = static_cast<EdgeId>(words[2 + i]);
        for (auto& pe : pedges_) {
          if (pe.id == dead) pe.alive = false;
        }
      }
    }
  }

  BlMachine bl_;
  bool marked_ = false;
};

// --------------------------------------------------------------------------
// Recursion core: Turan-sample the >=d-dimension part, solve the induced
// sample with the marking engine, keep the violated edges, recurse on the
// rest. Step layout per level: 0 agg (degree bound), 1 sample, 2 star,
// then a full BlMachine block, then next level.
class DeltaEpsCore final : public BeameLubyCore {
 public:
  DeltaEpsCore(NodeState* st, const EngineConfig* cfg) : BeameLubyCore(st, cfg) {}

  void start(SubApi& api) override {
    setup(api);
    tree_start(api);
  }

  void vstep(SubApi& api, std::uint32_t vround, const sim::VInbox& inbox) override {
    for (const auto& msg : inbox) absorb(api, msg);
    if (vround < 1) return;
    client_service(api);
    while (true) {
      auto before = std::make_tuple(phase_, level_, bl_sub_.stage, bl_sub_.iter);
      pump(api);
      if (finished_ || before == std::make_tuple(phase_, level_, bl_sub_.stage, bl_sub_.iter)) {
        break;
      }
    }
    client_service(api);
    if (finished_) {
      if (st_->is_hypernode) {
        api.output() = {static_cast<std::int64_t>(st_->status),
                        static_cast<std::int64_t>(level_), timed_out_ ? 1 : 0};
      }
      api.done();
    }
  }

  bool expects_publish_from(std::uint32_t step, VertexId v) override {
    if (in_subphase_ && step >= sub_base_) {
      return mirror_status(v) == VStatus::undecided && star_.count(v) != 0 &&
             shares_alive_edge(v);
    }
    return HyperCore::expects_publish_from(step, v);
  }

 private:
  enum class Phase { agg, sample, star, subphase, stopped };

  void pump(SubApi& api) {
    if (finished_) return;
    const ContainerView& cv = api.view();
    switch (phase_) {
      case Phase::agg: {
        std::vector<Word> own = {0, 0};
        if (is_vertex_ && st_->status == VStatus::undecided) {
          own[0] = 1;
          Word deg = 0;
          for (const auto& pe : pedges_) {
            if (edge_alive(pe) && !proj(pe).empty()) deg += 1;
          }
          own[1] = deg;
        }
        agg_send_up_if_ready(api, step(0), own,
                             [](const std::vector<Word>& a, const std::vector<Word>& b) {
                               return std::vector<Word>{a[0] | b[0], std::max(a[1], b[1])};
                             });
        if (cv.is_root && agg_up_complete(step(0)) && !down_value(step(0))) {
          auto v = agg_root_value(step(0));
          std::vector<Word> down;
          if (v[0] == 0) {
            down = {kDownStop};
          } else if (level_cap_ > 0 && level_ >= level_cap_) {
            down = {kDownTimeout};
          } else {
            down = {kDownZeta, std::max<Word>(1, v[1])};
          }
          broadcast_down(api, step(0), down);
        }
        const auto* d = down_value(step(0));
        if (!d) return;
        if ((*d)[0] == kDownStop || (*d)[0] == kDownTimeout) {
          timed_out_ = (*d)[0] == kDownTimeout;
          finished_ = true;
          phase_ = Phase::stopped;
          return;
        }
        double delta_bound = static_cast<double>((*d)[1]);
        if (level_cap_ == 0) {
          // expected recursion count O(Delta^{1/(d-1)})
          level_cap_ = 50 * static_cast<std::uint64_t>(
                                std::ceil(std::pow(delta_bound,
                                                   1.0 / std::max(1, cfg_->dim_param - 1)))) +
                       10;
        }
        double p = std::pow(1.0 / delta_bound, 1.0 / std::max(1, cfg_->dim_param - 1));
        if (is_vertex_ && st_->status == VStatus::undecided) {
          sampled_ = api.rng().bernoulli(p);
          publish(api, step(1), {pack(st_->status, st_->shot), sampled_ ? 1u : 0u});
        }
        phase_ = Phase::sample;
        return;
      }
      case Phase::sample: {
        if (!publish_complete(step(1))) return;
        // delete the largest-id sampled member of every fully-sampled edge of
        // dimension >= d
        if (is_vertex_ && st_->status == VStatus::undecided) {
          bool in_star = sampled_;
          if (sampled_) {
            for (const auto& pe : pedges_) {
              if (!edge_alive(pe)) continue;
              auto p = proj(pe);
              if (p.size() < static_cast<std::size_t>(cfg_->dim_param)) continue;
              bool all = true;
              VertexId biggest = 0;
              for (VertexId u : p) {
                const auto* w = step_words(step(1), u);
                if (!w || w->size() < 2 || (*w)[1] == 0) { all = false; break; }
                biggest = std::max(biggest, u);
              }
              if (all && biggest == st_->vertex) { in_star = false; break; }
            }
          }
          publish(api, step(2), {pack(st_->status, st_->shot), in_star ? 1u : 0u});
        }
        phase_ = Phase::star;
        return;
      }
      case Phase::star: {
        if (!publish_complete(step(2))) return;
        star_.clear();
        for (const auto& [v, words] : step_bucket(step(2))) {
          if (words.size() >= 2 && words[1] == 1) star_.insert(v);
        }
        sub_base_ = step(3);
        bl_sub_ = BlMachine{};
        bl_sub_.cfg.d = cfg_->dim_param;
        bl_sub_.cfg.iter_cap = cfg_->bl_iter_cap;
        bl_sub_.base = sub_base_;
        in_subphase_ = true;
        phase_ = Phase::subphase;
        [[fallthrough]];
      }
      case Phase::subphase: {
        drive_bl(api, bl_sub_, &star_);
        if (!bl_sub_.finished) return;
        in_subphase_ = false;
        if (bl_sub_.timed_out) {
          timed_out_ = true;
          finished_ = true;
          phase_ = Phase::stopped;
          return;
        }
        // statuses of the star set are now decided; survivors recurse
        level_ += 1;
        base_ = bl_sub_.base + 6;
        phase_ = Phase::agg;
        return;
      }
      case Phase::stopped:
        return;
    }
  }

  std::uint32_t step(int off) const { return base_ + static_cast<std::uint32_t>(off); }

  Phase phase_ = Phase::agg;
  std::uint32_t base_ = 0;
  std::uint64_t level_ = 0;
  std::uint64_t level_cap_ = 0;
  bool sampled_ = false;
  std::set<VertexId> star_;
  std::uint32_t sub_base_ = 0;
  bool in_subphase_ = false;
  BlMachine bl_sub_;
  bool finished_ = false;
  bool timed_out_ = false;
};

// --------------------------------------------------------------------------
// Priority engine: every active vertex draws r in [1, n^2]; vertices that are
// the maximum of no incident edge join the set, vertices whose edge is
// otherwise fully marked are eliminated. Purely edge-local, no tree.
class KuwCore final : public HyperCore {
 public:
  KuwCore(NodeState* st, const EngineConfig* cfg) : HyperCore(st, cfg) {}

  void start(SubApi& api) override { setup(api); }

  void vstep(SubApi& api, std::uint32_t vround, const sim::VInbox& inbox) override {
    for (const auto& msg : inbox) absorb(api, msg);
    if (vround < 1) return;
    client_service(api);
    while (true) {
      auto before = std::make_pair(phase_, iter_);
      pump(api);
      if (before == std::make_pair(phase_, iter_)) break;
    }
    client_service(api);
    if (check_done()) {
      if (st_->is_hypernode) {
        api.output() = {static_cast<std::int64_t>(st_->status),
                        static_cast<std::int64_t>(iter_), gave_up_ ? 1 : 0};
      }
      api.done();
    }
  }

 private:
  enum class Phase { draw, prio, mark, apply, settled };

  void pump(SubApi& api) {
    switch (phase_) {
      case Phase::draw: {
        if (!is_vertex_ || st_->status != VStatus::undecided) {
          phase_ = Phase::settled;
          return;
        }
        if (cfg_->kuw_iter_cap > 0 && iter_ >= cfg_->kuw_iter_cap) {
          gave_up_ = true;
          phase_ = Phase::settled;
          return;
        }
        iter_ += 1;
        std::uint64_t nn = static_cast<std::uint64_t>(cfg_->n);
        prio_ = api.rng().range(1, std::max<std::uint64_t>(1, nn * nn));
        Word lo = prio_ & ((Word{1} << cfg_->id_bits) - 1);
        Word hi = prio_ >> cfg_->id_bits;
        publish(api, step(0), {pack(st_->status, st_->shot), lo, hi});
        phase_ = Phase::prio;
        return;
      }
      case Phase::prio: {
        if (!publish_complete(step(0))) return;
        std::vector<std::vector<VertexId>> incident;
        for (const auto& pe : pedges_) {
          if (!edge_alive(pe)) continue;
          auto p = proj(pe);
          if (!p.empty() && std::binary_search(p.begin(), p.end(), st_->vertex)) {
            incident.push_back(std::move(p));
          }
        }
        marked_ = kuw_marked(st_->vertex, incident,
                             [&](VertexId u) { return std::make_pair(prio_of(u), u); });
        publish(api, step(1), {pack(st_->status, st_->shot), marked_ ? 1u : 0u});
        phase_ = Phase::mark;
        return;
      }
      case Phase::mark: {
        if (!publish_complete(step(1))) return;
        std::vector<std::vector<VertexId>> incident;
        for (const auto& pe : pedges_) {
          if (!edge_alive(pe)) continue;
          auto p = proj(pe);
          if (std::binary_search(p.begin(), p.end(), st_->vertex)) {
            incident.push_back(std::move(p));
          }
        }
        bool eliminated =
            kuw_eliminated(st_->vertex, incident, [&](VertexId u) { return mark_of(u); });
        if (marked_) set_status(VStatus::in_set);
        if (eliminated) set_status(VStatus::out);
        publish(api, step(2), {pack(st_->status, st_->shot)});
        phase_ = Phase::apply;
        return;
      }
      case Phase::apply: {
        if (!publish_complete(step(2))) return;
        base_ += 3;
        phase_ = st_->status == VStatus::undecided ? Phase::draw : Phase::settled;
        return;
      }
      case Phase::settled:
        return;
    }
  }

  std::uint64_t prio_of(VertexId u) {
    if (u == st_->vertex) return prio_;
    const auto* w = step_words(step(0), u);
    if (!w || w->size() < 3) return 0;
    return (*w)[1] | ((*w)[2] << cfg_->id_bits);
  }

  bool mark_of(VertexId u) {
    if (u == st_->vertex) return marked_;
    const auto* w = step_words(step(1), u);
    return w && w->size() >= 2 && (*w)[1] == 1;
  }

  bool check_done() {
    if (phase_ != Phase::settled) return false;
    if (is_client_) {
      // a client relays while undecided members still share a live edge with
      // it; once its edge dies, nobody depends on it any more
      for (VertexId v : tracked_) {
        if (mirror_status(v) == VStatus::undecided && shares_alive_edge(v)) return false;
      }
    }
    return true;
  }

  std::uint32_t step(int off) const { return base_ + static_cast<std::uint32_t>(off); }

  Phase phase_ = Phase::draw;
  std::uint32_t base_ = 0;
  std::uint64_t iter_ = 0;
  std::uint64_t prio_ = 0;
  bool marked_ = false;
  bool gave_up_ = false;
};

// --------------------------------------------------------------------------
// LOCAL collect-and-solve: ship the cluster's sub-hypergraph to the center,
// solve greedily by id there, disseminate the decisions.
class CollectCore final : public HyperCore {
 public:
  CollectCore(NodeState* st, const EngineConfig* cfg) : HyperCore(st, cfg) {}

  void start(SubApi& api) override {
    setup(api);
    tree_start(api);
  }

  void vstep(SubApi& api, std::uint32_t vround, const sim::VInbox& inbox) override {
    for (const auto& msg : inbox) absorb(api, msg);
    if (vround < 1) return;
    const ContainerView& cv = api.view();

    if (!up_done_) {
      std::vector<Word> own = encode_own();
      agg_send_up_if_ready(api, 0, own, merge_collect);
      if (cv.is_root && agg_up_complete(0) && !down_value(0)) {
        broadcast_down(api, 0, solve(agg_root_value(0)));
      }
      if (up_sent_.count(0) && up_sent_[0]) up_done_ = true;
    }
    const auto* d = down_value(0);
    if (d) {
      if (is_vertex_) {
        std::size_t count = static_cast<std::size_t>((*d)[0]);
        for (std::size_t i = 0; i < count; ++i) {
          VertexId v = static_cast<VertexId>((*d)[1 + 2 * i]);
          if (v == st_->vertex) {
            set_status((*d)[2 + 2 * i] == 1 ? VStatus::in_set : VStatus::out);
          }
        }
        api.output() = {static_cast<std::int64_t>(st_->status)};
      }
      api.done();
    }
  }

 private:
  // [nv, v..., ne, (eid, k, members...)...]
  std::vector<Word> encode_own() const {
    std::vector<Word> out;
    std::vector<VertexId> verts;
    if (is_vertex_ && st_->status == VStatus::undecided) verts.push_back(st_->vertex);
    out.push_back(verts.size());
    for (VertexId v : verts) out.push_back(v);
    std::vector<const PhaseEdge*> edges;
    for (const auto& pe : pedges_) {
      if (edge_alive(pe) && !proj(pe).empty()) edges.push_back(&pe);
    }
    out.push_back(edges.size());
    for (const auto* pe : edges) {
      auto p = proj(*pe);
      out.push_back(pe->id);
      out.push_back(p.size());
      for (VertexId u : p) out.push_back(u);
    }
    return out;
  }

  static void decode(const std::vector<Word>& in, std::set<VertexId>& verts,
                     std::map<EdgeId, std::vector<VertexId>>& edges) {
    std::size_t pos = 0;
    std::size_t nv = static_cast<std::size_t>(in.at(pos++));
    for (std::size_t i = 0; i < nv; ++i) verts.insert(static_cast<VertexId>(in.at(pos++)));
    std::size_t ne = static_cast<std::size_t>(in.at(pos++));
    for (std::size_t i = 0; i < ne; ++i) {
      EdgeId id = static_cast<EdgeId>(in.at(pos++));
      std::size_t k = static_cast<std::size_t>(in.at(pos++));
      std::vector<VertexId> mem;
      for (std::size_t j = 0; j < k; ++j) mem.push_back(static_cast<VertexId>(in.at(pos++)));
      edges.emplace(id, std::move(mem));
    }
  }

  static std::vector<Word> merge_collect(const std::vector<Word>& a, const std::vector<Word>& b) {
    std::set<VertexId> verts;
    std::map<EdgeId, std::vector<VertexId>> edges;
    decode(a, verts, edges);
    decode(b, verts, edges);
    std::vector<Word> out;
    out.push_back(verts.size());
    for (VertexId v : verts) out.push_back(v);
    out.push_back(edges.size());
    for (const auto& [id, mem] : edges) {
      out.push_back(id);
      out.push_back(mem.size());
      for (VertexId u : mem) out.push_back(u);
    }
    return out;
  }

  // greedy by ascending id; output [count, (v, bit)...]
  static std::vector<Word> solve(const std::vector<Word>& collected) {
    std::set<VertexId> verts;
    std::map<EdgeId, std::vector<VertexId>> edges;
    decode(collected, verts, edges);
    std::set<VertexId> chosen;
    for (VertexId v : verts) {
      bool blocked = false;
      for (const auto& [id, mem] : edges) {
        if (!std::binary_search(mem.begin(), mem.end(), v)) continue;
        bool rest = true;
        for (VertexId u : mem) {
          if (u != v && !chosen.count(u)) { rest = false; break; }
        }
        if (rest && mem.size() >= 1) { blocked = true; break; }
      }
      if (!blocked) chosen.insert(v);
    }
    std::vector<Word> out;
    out.push_back(verts.size());
    for (VertexId v : verts) {
      out.push_back(v);
      out.push_back(chosen.count(v) ? 1 : 0);
    }
    return out;
  }

  bool up_done_ = false;
};

// --------------------------------------------------------------------------
// Distributed zeta: local maxima from each vertex's incident projections,
// tree-aggregated; every node learns the winning (count, j) pair.
class ZetaCore final : public HyperCore {
 public:
  ZetaCore(NodeState* st, const EngineConfig* cfg, int d) : HyperCore(st, cfg), d_(d) {}

  void start(SubApi& api) override {
    setup(api);
    tree_start(api);
  }

  void vstep(SubApi& api, std::uint32_t vround, const sim::VInbox& inbox) override {
    for (const auto& msg : inbox) absorb(api, msg);
    if (vround < 1) return;
    std::vector<Word> own = {0, 0, 1};
    if (is_vertex_) {
      std::vector<std::vector<VertexId>> projections;
      for (const auto& pe : pedges_) {
        if (edge_alive(pe)) projections.push_back(proj(pe));
      }
      ZetaPair z = local_zeta(st_->vertex, projections, d_);
      local_ = z;
      own = {1, z.count, z.j};
    }
    agg_send_up_if_ready(api, 0, own, agg_combine_zeta);
    const ContainerView& cv = api.view();
    if (cv.is_root && agg_up_complete(0) && !down_value(0)) {
      auto v = agg_root_value(0);
      broadcast_down(api, 0, {v[1], v[2]});
    }
    const auto* d = down_value(0);
    if (d) {
      api.output() = {static_cast<std::int64_t>((*d)[0]), static_cast<std::int64_t>((*d)[1]),
                      static_cast<std::int64_t>(local_.count),
                      static_cast<std::int64_t>(local_.j)};
      api.done();
    }
  }

 private:
  int d_;
  ZetaPair local_;
};

// --------------------------------------------------------------------------
// One-shot Turan sampling: sample with p = (1/delta)^(1/(d-1)); for every
// fully-sampled edge of dimension >= d drop its largest sampled member.
// Outputs the surviving flag; statuses are not touched.
class TuranCore final : public HyperCore {
 public:
  TuranCore(NodeState* st, const EngineConfig* cfg, int d, double delta_bound)
      : HyperCore(st, cfg), d_(d), delta_(delta_bound) {}

  void start(SubApi& api) override { setup(api); }

  void vstep(SubApi& api, std::uint32_t vround, const sim::VInbox& inbox) override {
    for (const auto& msg : inbox) absorb(api, msg);
    if (vround < 1) return;
    client_service(api);
    if (is_client_) {
      if (pedges_.empty() || relayed_.count(0)) api.done();
      return;
    }
    if (!is_vertex_) {
      api.done();
      return;
    }
    if (!sent_) {
      sent_ = true;
      double p = std::pow(1.0 / std::max(1.0, delta_), 1.0 / std::max(1, d_ - 1));
      sampled_ = api.rng().bernoulli(p);
      publish(api, 0, {pack(st_->status, st_->shot), sampled_ ? 1u : 0u});
      return;
    }
    if (!publish_complete(0)) return;
    bool in_star = sampled_;
    if (sampled_) {
      for (const auto& pe : pedges_) {
        if (!edge_alive(pe)) continue;
        auto p = proj(pe);
        if (p.size() < static_cast<std::size_t>(d_)) continue;
        bool all = true;
        VertexId biggest = 0;
        for (VertexId u : p) {
          const auto* w = step_words(0, u);
          if (!w || w->size() < 2 || (*w)[1] == 0) { all = false; break; }
          biggest = std::max(biggest, u);
        }
        if (all && biggest == st_->vertex) { in_star = false; break; }
      }
    }
    api.output() = {in_star ? 1 : 0};
    api.done();
  }

 private:
  int d_;
  double delta_;
  bool sent_ = false;
  bool sampled_ = false;
};

// --------------------------------------------------------------------------
// One sampling round of the dimension-reduction wrapper: coin-flip shot
// membership, then tree-aggregate (any-undecided, dimension-violation).
class SampleCore final : public HyperCore {
 public:
  SampleCore(NodeState* st, const EngineConfig* cfg, double threshold)
      : HyperCore(st, cfg), threshold_(threshold) {}

  void start(SubApi& api) override {
    setup(api);
    tree_start(api);
  }

  void vstep(SubApi& api, std::uint32_t vround, const sim::VInbox& inbox) override {
    for (const auto& msg : inbox) absorb(api, msg);
    if (vround < 1) return;
    client_service(api);
    if (!flipped_) {
      flipped_ = true;
      if (is_vertex_ && st_->status == VStatus::undecided) {
        st_->shot = api.rng().bernoulli(0.5);
        publish(api, 0, {pack(st_->status, st_->shot)});
      } else if (st_->is_hypernode) {
        st_->shot = false;
      }
      return;
    }
    if (!agg_sent_) {
      if ((is_vertex_ || is_client_) && !publish_complete(0)) return;
      agg_sent_ = true;
      Word any = is_vertex_ && st_->status == VStatus::undecided ? 1 : 0;
      Word viol = 0;
      for (const auto& pe : pedges_) {
        if (!edge_alive(pe)) continue;
        auto p = proj(pe);
        std::size_t sampled = 0;
        bool all = true;
        for (VertexId u : p) {
          bool s = u == st_->vertex ? st_->shot : mirror_shot(u);
          if (s) sampled += 1; else all = false;
        }
        if (all && static_cast<double>(sampled) > threshold_ && !p.empty()) viol = 1;
      }
      own_ = {any, viol};
    }
    agg_send_up_if_ready(api, 1, own_,
                         [](const std::vector<Word>& a, const std::vector<Word>& b) {
                           return std::vector<Word>{a[0] | b[0], a[1] | b[1]};
                         });
    const ContainerView& cv = api.view();
    if (cv.is_root && agg_up_complete(1) && !down_value(1)) {
      broadcast_down(api, 1, agg_root_value(1));
    }
    const auto* d = down_value(1);
    if (d) {
      api.output() = {static_cast<std::int64_t>((*d)[0]), static_cast<std::int64_t>((*d)[1])};
      api.done();
    }
  }

 private:
  double threshold_;
  bool flipped_ = false;
  bool agg_sent_ = false;
  std::vector<Word> own_ = {0, 0};
};

}  // namespace

std::unique_ptr<SubProgram> make_collect_core(NodeState* st, const EngineConfig* cfg) {
  return std::make_unique<CollectCore>(st, cfg);
}
std::unique_ptr<SubProgram> make_beame_luby_core(NodeState* st, const EngineConfig* cfg) {
  return std::make_unique<BeameLubyCore>(st, cfg);
}
std::unique_ptr<SubProgram> make_delta_eps_core(NodeState* st, const EngineConfig* cfg) {
  return std::make_unique<DeltaEpsCore>(st, cfg);
}
std::unique_ptr<SubProgram> make_kuw_core(NodeState* st, const EngineConfig* cfg) {
  return std::make_unique<KuwCore>(st, cfg);
}
std::unique_ptr<SubProgram> make_zeta_core(NodeState* st, const EngineConfig* cfg, int d) {
  return std::make_unique<ZetaCore>(st, cfg, d);
}
std::unique_ptr<SubProgram> make_turan_core(NodeState* st, const EngineConfig* cfg, int d,
                                            double delta_bound) {
  return std::make_unique<TuranCore>(st, cfg, d, delta_bound);
}
std::unique_ptr<SubProgram> make_sample_core(NodeState* st, const EngineConfig* cfg,
                                             double threshold) {
  return std::make_unique<SampleCore>(st, cfg, threshold);
}

}  // namespace hmis::engines
