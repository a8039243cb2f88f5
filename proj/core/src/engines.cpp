#include "hmis/engines.hpp"

#include <algorithm>
#include <cmath>

#include "engine_internal.hpp"
#include "hmis/multiplex.hpp"
#include "hmis/programs.hpp"

namespace hmis::engines {

using namespace hmis::sim;

EngineChoice parse_engine(const std::string& name) {
  EngineChoice c;
  auto base = name;
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    base = name.substr(0, colon);
  }
  auto kind_of = [](const std::string& s) -> EngineKind {
    if (s == "local-mis") return EngineKind::local_mis;
    if (s == "beame-luby") return EngineKind::beame_luby;
    if (s == "turan-recursive") return EngineKind::turan_recursive;
    if (s == "kuw-sqrt") return EngineKind::kuw_sqrt;
    if (s == "dim-reduced") return EngineKind::dim_reduced;
    throw Error("unknown engine: " + s);
  };
  c.kind = kind_of(base);
  if (c.kind == EngineKind::dim_reduced) {
    if (colon == std::string::npos) {
      c.inner = EngineKind::turan_recursive;
    } else {
      c.inner = kind_of(name.substr(colon + 1));
      if (c.inner == EngineKind::dim_reduced) throw Error("dim-reduced cannot nest");
    }
  }
  return c;
}

std::string engine_name(const EngineChoice& c) {
  auto nm = [](EngineKind k) -> std::string {
    switch (k) {
      case EngineKind::local_mis: return "local-mis";
      case EngineKind::beame_luby: return "beame-luby";
      case EngineKind::turan_recursive: return "turan-recursive";
      case EngineKind::kuw_sqrt: return "kuw-sqrt";
      case EngineKind::dim_reduced: return "dim-reduced";
    }
    return "?";
  };
  if (c.kind == EngineKind::dim_reduced) return nm(c.kind) + ":" + nm(c.inner);
  return nm(c.kind);
}

std::vector<VertexId> MisResult::members() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < in_set.size(); ++v) {
    if (in_set[v]) out.push_back(v);
  }
  return out;
}

namespace {

std::uint32_t ceil_log2(std::uint64_t x) {
  std::uint32_t b = 0;
  while ((std::uint64_t{1} << b) < x) ++b;
  return b;
}

struct EngineContext {
  const Hypergraph* h = nullptr;
  Topology topo;
  std::unique_ptr<Session> session;
  std::vector<NodeState> states;
  EngineConfig cfg;
  std::optional<decomp::Decomposition> dec;
  bool lists_shipped = false;
  std::uint64_t phase_round_cap = 0;
  MisResult* res = nullptr;
};

RunOptions phase_options(EngineContext& ctx) {
  RunOptions opt;
  opt.max_rounds = ctx.phase_round_cap;
  return opt;
}

std::vector<std::vector<ContainerView>> single_container_views(const Topology& topo) {
  std::vector<std::vector<ContainerView>> views(topo.num_nodes());
  for (NodeId v = 0; v < topo.num_nodes(); ++v) {
    ContainerView cv;
    cv.tag = 0;
    cv.is_root = false;
    for (const auto& le : topo.links_of(v)) cv.links.push_back(le);
    views[v].push_back(std::move(cv));
  }
  return views;
}

void run_exchange(EngineContext& ctx) {
  if (ctx.topo.representation() == Representation::server_client && !ctx.lists_shipped) {
    ctx.lists_shipped = true;
    auto views = single_container_views(ctx.topo);
    run_multiplexed(*ctx.session, views,
                    [&](NodeId v, const ContainerView&) {
                      return make_list_ship(&ctx.states[v], &ctx.cfg);
                    },
                    phase_options(ctx));
  }
  auto views = single_container_views(ctx.topo);
  run_multiplexed(*ctx.session, views,
                  [&](NodeId v, const ContainerView&) {
                    return make_status_exchange(&ctx.states[v], &ctx.cfg);
                  },
                  phase_options(ctx));
}

void ensure_decomposition(EngineContext& ctx) {
  if (ctx.dec) return;
  ctx.dec = decomp::linial_saks(*ctx.session);
  ctx.res->colors_used = ctx.dec->num_colors;
  if (!ctx.dec->complete) {
    ctx.res->anomaly = "decomposition iteration cap hit with unassigned hypernodes";
    ctx.res->timed_out = true;
  }
  for (NodeId v = 0; v < ctx.topo.num_nodes(); ++v) {
    NodeState& st = ctx.states[v];
    if (st.is_hypernode && v < ctx.cfg.n) {
      st.color = ctx.dec->color[v];
      st.center = ctx.dec->center[v];
    }
  }
  // set/color assignments must reach the co-member mirrors before any
  // color-filtered phase runs
  run_exchange(ctx);
}

// containers of one color, restricted to tags whose set still has vertices to
// decide this pass
std::vector<std::vector<ContainerView>> color_views(EngineContext& ctx, std::uint32_t color,
                                                    bool use_shot) {
  std::set<std::uint32_t> live_tags;
  for (VertexId v = 0; v < ctx.cfg.n; ++v) {
    const NodeState& st = ctx.states[v];
    if (st.color == static_cast<std::int32_t>(color) && st.status == VStatus::undecided &&
        (!use_shot || st.shot)) {
      live_tags.insert(st.center);
    }
  }
  std::vector<std::vector<ContainerView>> views(ctx.topo.num_nodes());
  for (NodeId node = 0; node < ctx.topo.num_nodes(); ++node) {
    for (const auto& rec : ctx.dec->node_containers[node]) {
      if (rec.color != color || !live_tags.count(rec.tag)) continue;
      ContainerView cv;
      cv.tag = rec.tag;
      cv.color = rec.color;
      cv.is_root = node == rec.tag;
      cv.parent_link = rec.parent_link;
      cv.depth = rec.depth;
      for (LinkId l : rec.links) {
        cv.links.push_back({l, ctx.topo.link_peer(l, node)});
      }
      views[node].push_back(std::move(cv));
    }
  }
  return views;
}

void harvest_core_outputs(EngineContext& ctx, const MultiplexResult& mr) {
  for (const auto& per_node : mr.outputs) {
    for (const auto& [tag, out] : per_node) {
      if (out.size() >= 2) {
        ctx.res->outer_iterations =
            std::max<std::uint64_t>(ctx.res->outer_iterations, static_cast<std::uint64_t>(out[1]));
        ctx.res->recursion_depth =
            std::max<std::uint64_t>(ctx.res->recursion_depth, static_cast<std::uint64_t>(out[1]));
      }
      if (out.size() >= 3 && out[2] != 0) {
        ctx.res->timed_out = true;
        if (ctx.res->anomaly.empty()) ctx.res->anomaly = "engine iteration cap hit";
      }
    }
  }
  if (!mr.trace.all_halted) {
    ctx.res->timed_out = true;
    if (ctx.res->anomaly.empty()) ctx.res->anomaly = "engine phase hit the round cap";
  }
}

using CoreMaker = std::function<std::unique_ptr<SubProgram>(NodeState*, const EngineConfig*)>;

void run_color_loop(EngineContext& ctx, const CoreMaker& maker, bool use_shot) {
  ensure_decomposition(ctx);
  ctx.cfg.use_sets = true;
  ctx.cfg.use_shot = use_shot;
  for (std::uint32_t c = 0; c < ctx.dec->num_colors; ++c) {
    auto views = color_views(ctx, c, use_shot);
    bool any = false;
    for (const auto& v : views) {
      if (!v.empty()) { any = true; break; }
    }
    if (!any) continue;
    ctx.cfg.phase_color = c;
    auto mr = run_multiplexed(*ctx.session, views,
                              [&](NodeId v, const ContainerView&) {
                                return maker(&ctx.states[v], &ctx.cfg);
                              },
                              phase_options(ctx));
    harvest_core_outputs(ctx, mr);
    run_exchange(ctx);
  }
  ctx.cfg.use_sets = false;
  ctx.cfg.use_shot = false;
}

// whole-network single-phase engine (priority engine)
void run_kuw(EngineContext& ctx, bool use_shot) {
  ctx.cfg.use_sets = false;
  ctx.cfg.use_shot = use_shot;
  auto views = single_container_views(ctx.topo);
  auto mr = run_multiplexed(*ctx.session, views,
                            [&](NodeId v, const ContainerView&) {
                              return make_kuw_core(&ctx.states[v], &ctx.cfg);
                            },
                            phase_options(ctx));
  harvest_core_outputs(ctx, mr);
  run_exchange(ctx);
  ctx.cfg.use_shot = false;
}

void dispatch_engine(EngineContext& ctx, const EngineChoice& choice, bool use_shot);

// dimension-reduction wrapper: sample half the undecided vertices, check the
// induced dimension, solve the sample with the inner engine, repeat
void run_dim_reduced(EngineContext& ctx, const EngineChoice& choice) {
  // Per-component trees for the aggregation of (any-active, violation).
  auto comp = lib::connected_components(*ctx.session, std::vector<bool>(ctx.topo.num_nodes(), true));
  std::vector<bool> roots(ctx.topo.num_nodes(), false);
  for (NodeId v = 0; v < ctx.topo.num_nodes(); ++v) {
    if (comp.label[v] == static_cast<std::int64_t>(v)) roots[v] = true;
  }
  auto forest = lib::bfs_forest(*ctx.session, roots);

  std::vector<std::vector<ContainerView>> views(ctx.topo.num_nodes());
  for (NodeId v = 0; v < ctx.topo.num_nodes(); ++v) {
    if (forest.root[v] < 0) continue;
    ContainerView cv;
    cv.tag = static_cast<std::uint32_t>(forest.root[v]);
    cv.is_root = forest.root[v] == static_cast<std::int64_t>(v);
    cv.parent_link = forest.parent_link[v];
    cv.depth = static_cast<std::uint32_t>(forest.level[v]);
    for (const auto& le : ctx.topo.links_of(v)) cv.links.push_back(le);
    views[v].push_back(std::move(cv));
  }

  const double threshold =
      3.0 * std::log2(static_cast<double>(std::max<std::size_t>(2, ctx.cfg.m + ctx.cfg.n)));
  const std::uint64_t shot_cap = 50 * std::max<std::uint64_t>(1, ceil_log2(ctx.cfg.n)) + 20;

  EngineChoice inner = choice;
  inner.kind = choice.inner;

  for (std::uint64_t shot = 0; shot < shot_cap; ++shot) {
    auto mr = run_multiplexed(*ctx.session, views,
                              [&](NodeId v, const ContainerView&) {
                                return make_sample_core(&ctx.states[v], &ctx.cfg, threshold);
                              },
                              phase_options(ctx));
    ctx.res->dim_samples += 1;
    bool any_active = false, violation = false;
    for (const auto& per_node : mr.outputs) {
      for (const auto& [tag, out] : per_node) {
        if (out.size() >= 2) {
          any_active = any_active || out[0] != 0;
          violation = violation || out[1] != 0;
        }
      }
    }
    if (!mr.trace.all_halted) {
      ctx.res->timed_out = true;
      ctx.res->anomaly = "sampling phase hit the round cap";
      return;
    }
    if (!any_active) return;
    if (violation) {
      ctx.res->dim_violations += 1;
      continue;  // resample
    }
    run_exchange(ctx);  // propagate shot flags into mirrors
    dispatch_engine(ctx, inner, /*use_shot=*/true);
    if (ctx.res->timed_out) return;
  }
  ctx.res->timed_out = true;
  ctx.res->anomaly = "dimension-reduction shot cap hit";
}

void dispatch_engine(EngineContext& ctx, const EngineChoice& choice, bool use_shot) {
  switch (choice.kind) {
    case EngineKind::local_mis:
      if (ctx.session->mode().regime != Regime::local) {
        throw Error("local-mis requires the LOCAL regime");
      }
      run_color_loop(ctx, [](NodeState* st, const EngineConfig* cfg) {
        return make_collect_core(st, cfg);
      }, use_shot);
      return;
    case EngineKind::beame_luby:
      run_color_loop(ctx, [](NodeState* st, const EngineConfig* cfg) {
        return make_beame_luby_core(st, cfg);
      }, use_shot);
      return;
    case EngineKind::turan_recursive:
      run_color_loop(ctx, [](NodeState* st, const EngineConfig* cfg) {
        return make_delta_eps_core(st, cfg);
      }, use_shot);
      return;
    case EngineKind::kuw_sqrt:
      run_kuw(ctx, use_shot);
      return;
    case EngineKind::dim_reduced:
      run_dim_reduced(ctx, choice);
      return;
  }
}

EngineContext make_context(const Hypergraph& h, const std::vector<bool>& active,
                           const MisOptions& opt, MisResult& res) {
  EngineContext ctx;
  ctx.h = &h;
  ctx.topo = Topology::from_hypergraph(h, opt.repr);
  ctx.session = std::make_unique<Session>(ctx.topo, opt.mode, opt.seed);
  ctx.states = init_node_states(ctx.topo, h, active);
  ctx.cfg.n = h.num_vertices();
  ctx.cfg.m = h.num_edges();
  ctx.cfg.repr = opt.repr;
  ctx.cfg.id_bits = word_bits(ctx.topo.id_space());
  int d = opt.engine.d;
  if (opt.engine.eps) {
    d = 1 + static_cast<int>(std::ceil(1.0 / *opt.engine.eps));
  }
  ctx.cfg.dim_param = std::max(2, d);
  std::uint64_t lg = std::max<std::uint64_t>(1, ceil_log2(std::max<std::size_t>(2, ctx.cfg.n)));
  ctx.cfg.bl_iter_cap = 50 * lg * lg * lg;
  ctx.cfg.kuw_iter_cap =
      50 * static_cast<std::uint64_t>(
               std::ceil(std::sqrt(static_cast<double>(std::max<std::size_t>(1, ctx.cfg.n)))));
  ctx.phase_round_cap = opt.max_rounds != 0
                            ? opt.max_rounds
                            : std::min<std::uint64_t>(
                                  50 * ctx.topo.num_nodes() * ctx.topo.num_nodes() + 4000, 400000);
  ctx.res = &res;
  return ctx;
}

void finish_result(EngineContext& ctx, const std::vector<bool>& active, MisResult& res) {
  res.in_set.assign(ctx.cfg.n, false);
  for (VertexId v = 0; v < ctx.cfg.n; ++v) {
    if (!active[v]) continue;
    if (ctx.states[v].status == VStatus::in_set) {
      res.in_set[v] = true;
    } else if (ctx.states[v].status == VStatus::undecided) {
      res.timed_out = true;
      if (res.anomaly.empty()) {
        res.anomaly = "vertex " + std::to_string(v) + " undecided at engine end";
      }
    }
  }
  res.trace = ctx.session->total();
}

}  // namespace

MisResult solve_subgraph_mis(const Hypergraph& h, const std::vector<bool>& active,
                             const MisOptions& opt) {
  MisResult res;
  EngineContext ctx = make_context(h, active, opt, res);

  if (opt.engine.kind == EngineKind::beame_luby) {
    std::vector<VertexId> act;
    for (VertexId v = 0; v < h.num_vertices(); ++v) {
      if (active[v]) act.push_back(v);
    }
    SubHypergraphView view(h, act);
    for (EdgeId e : view.kept_edges()) {
      if (h.edge(e).size() > static_cast<std::size_t>(ctx.cfg.dim_param)) {
        throw Error("beame-luby requires dimension <= d on the active sub-hypergraph");
      }
    }
  }

  run_exchange(ctx);
  dispatch_engine(ctx, opt.engine, /*use_shot=*/false);
  finish_result(ctx, active, res);
  return res;
}

MisResult solve_mis(const Hypergraph& h, const MisOptions& opt) {
  return solve_subgraph_mis(h, std::vector<bool>(h.num_vertices(), true), opt);
}

ZetaProfile compute_zeta(const Hypergraph& h, const std::vector<bool>& active, int d,
                         Representation repr, Mode mode, std::uint64_t seed) {
  std::vector<VertexId> act;
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (active[v]) act.push_back(v);
  }
  SubHypergraphView view(h, act);
  for (EdgeId e : view.kept_edges()) {
    if (h.edge(e).size() > static_cast<std::size_t>(d)) {
      throw Error("compute_zeta: active sub-hypergraph dimension exceeds d");
    }
  }

  MisOptions opt;
  opt.repr = repr;
  opt.mode = mode;
  opt.seed = seed;
  MisResult scratch;
  EngineContext ctx = make_context(h, active, opt, scratch);
  run_exchange(ctx);

  auto comp = lib::connected_components(*ctx.session,
                                        std::vector<bool>(ctx.topo.num_nodes(), true));
  std::vector<bool> roots(ctx.topo.num_nodes(), false);
  for (NodeId v = 0; v < ctx.topo.num_nodes(); ++v) {
    if (comp.label[v] == static_cast<std::int64_t>(v)) roots[v] = true;
  }
  auto forest = lib::bfs_forest(*ctx.session, roots);
  std::vector<std::vector<ContainerView>> views(ctx.topo.num_nodes());
  for (NodeId v = 0; v < ctx.topo.num_nodes(); ++v) {
    if (forest.root[v] < 0) continue;
    ContainerView cv;
    cv.tag = static_cast<std::uint32_t>(forest.root[v]);
    cv.is_root = forest.root[v] == static_cast<std::int64_t>(v);
    cv.parent_link = forest.parent_link[v];
    cv.depth = static_cast<std::uint32_t>(forest.level[v]);
    for (const auto& le : ctx.topo.links_of(v)) cv.links.push_back(le);
    views[v].push_back(std::move(cv));
  }
  auto mr = run_multiplexed(*ctx.session, views,
                            [&](NodeId v, const ContainerView&) {
                              return make_zeta_core(&ctx.states[v], &ctx.cfg, d);
                            },
                            phase_options(ctx));

  ZetaProfile prof;
  prof.per_vertex.assign(h.num_vertices(), 0.0);
  for (NodeId node = 0; node < mr.outputs.size(); ++node) {
    for (const auto& [tag, out] : mr.outputs[node]) {
      if (out.size() < 4) continue;
      ZetaPair root_pair{static_cast<std::uint64_t>(out[0]),
                         static_cast<std::uint32_t>(out[1])};
      if (root_pair.value() > prof.zeta + 1e-12) {
        prof.zeta = root_pair.value();
        prof.count = root_pair.count;
        prof.j = root_pair.j;
      }
      if (node < h.num_vertices()) {
        ZetaPair local{static_cast<std::uint64_t>(out[2]), static_cast<std::uint32_t>(out[3])};
        prof.per_vertex[node] = local.value();
      }
    }
  }
  prof.trace = ctx.session->total();
  return prof;
}

TuranResult turan_sample(const Hypergraph& h, const std::vector<bool>& active, int d,
                         double delta_bound, Representation repr, Mode mode,
                         std::uint64_t seed) {
  if (delta_bound < 1.0) throw Error("turan_sample: delta_bound must be >= 1");
  if (d < 2) throw Error("turan_sample: d must be >= 2");
  MisOptions opt;
  opt.repr = repr;
  opt.mode = mode;
  opt.seed = seed;
  opt.engine.d = d;
  MisResult scratch;
  EngineContext ctx = make_context(h, active, opt, scratch);
  run_exchange(ctx);
  auto views = single_container_views(ctx.topo);
  auto mr = run_multiplexed(*ctx.session, views,
                            [&](NodeId v, const ContainerView&) {
                              return make_turan_core(&ctx.states[v], &ctx.cfg, d, delta_bound);
                            },
                            phase_options(ctx));
  TuranResult res;
  for (NodeId v = 0; v < ctx.cfg.n; ++v) {
    for (const auto& [tag, out] : mr.outputs[v]) {
      if (!out.empty() && out[0] == 1) res.sample.push_back(static_cast<VertexId>(v));
    }
  }
  res.trace = ctx.session->total();
  return res;
}

}  // namespace hmis::engines
