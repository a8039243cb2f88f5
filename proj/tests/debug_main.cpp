// scratch driver for debugging engine hangs
#include <cstdio>

#include "engine_internal.hpp"
#include "hmis/decomposition.hpp"
#include "hmis/engines.hpp"
#include "hmis/multiplex.hpp"
#include "hmis/oracles.hpp"

using namespace hmis;
using namespace hmis::engines;
using namespace hmis::sim;

static const char* stname(VStatus s) {
  switch (s) {
    case VStatus::undecided: return "undecided";
    case VStatus::in_set: return "in";
    case VStatus::out: return "out";
    case VStatus::excluded: return "excl";
  }
  return "?";
}

int main(int argc, char** argv) {
  int which = argc > 1 ? std::atoi(argv[1]) : 0;

  if (which == 0) {
    // single hyperedge, local-mis SC; drive phases by hand
    Hypergraph h = Hypergraph::build(3, {{0, 1, 2}});
    Topology topo = Topology::from_hypergraph(h, Representation::server_client);
    Session session(topo, Mode::local(), 9);
    auto states = init_node_states(topo, h, {true, true, true});
    EngineConfig cfg;
    cfg.n = 3;
    cfg.m = 1;
    cfg.repr = Representation::server_client;
    cfg.id_bits = word_bits(topo.id_space());
    cfg.dim_param = 3;

    // ship + exchange (driver order: before the decomposition)
    std::vector<std::vector<ContainerView>> whole(topo.num_nodes());
    for (NodeId v = 0; v < topo.num_nodes(); ++v) {
      ContainerView cv;
      cv.tag = 0;
      for (const auto& le : topo.links_of(v)) cv.links.push_back(le);
      whole[v].push_back(cv);
    }
    RunOptions ro;
    ro.max_rounds = 200;
    auto ship = run_multiplexed(session, whole,
                                [&](NodeId v, const ContainerView&) {
                                  return make_list_ship(&states[v], &cfg);
                                },
                                ro);
    std::printf("ship halted=%d rounds=%u\n", ship.trace.all_halted, ship.trace.rounds);
    auto ex0 = run_multiplexed(session, whole,
                               [&](NodeId v, const ContainerView&) {
                                 return make_status_exchange(&states[v], &cfg);
                               },
                               ro);
    std::printf("exchange0 halted=%d rounds=%u\n", ex0.trace.all_halted, ex0.trace.rounds);

    auto dec = decomp::linial_saks(session);
    for (VertexId v = 0; v < 3; ++v) {
      states[v].color = dec.color[v];
      states[v].center = dec.center[v];
    }

    auto ex = run_multiplexed(session, whole,
                              [&](NodeId v, const ContainerView&) {
                                return make_status_exchange(&states[v], &cfg);
                              },
                              ro);
    std::printf("exchange halted=%d rounds=%u\n", ex.trace.all_halted, ex.trace.rounds);
    for (NodeId v = 0; v < topo.num_nodes(); ++v) {
      std::printf("node %u mirror:", v);
      for (auto& [u, k] : states[v].mirror) {
        std::printf(" (%u st=%s col=%d ctr=%u)", u, stname(k.status), k.color, k.center);
      }
      std::printf("\n");
    }

    // color phase
    cfg.use_sets = true;
    cfg.phase_color = 0;
    std::vector<std::vector<ContainerView>> views(topo.num_nodes());
    for (NodeId node = 0; node < topo.num_nodes(); ++node) {
      for (const auto& rec : dec.node_containers[node]) {
        if (rec.color != 0 || rec.tag != 2) continue;
        ContainerView cv;
        cv.tag = rec.tag;
        cv.color = rec.color;
        cv.is_root = node == rec.tag;
        cv.parent_link = rec.parent_link;
        cv.depth = rec.depth;
        for (LinkId l : rec.links) cv.links.push_back({l, topo.link_peer(l, node)});
        views[node].push_back(cv);
      }
    }
    auto mr = run_multiplexed(session, views,
                              [&](NodeId v, const ContainerView&) {
                                return make_collect_core(&states[v], &cfg);
                              },
                              ro);
    std::printf("collect halted=%d rounds=%u vrounds=%u\n", mr.trace.all_halted,
                mr.trace.rounds, mr.vrounds);
    for (VertexId v = 0; v < 3; ++v) {
      std::printf("v%u status=%s\n", v, stname(states[v].status));
    }
  }
  return 0;
}
// appended: full-driver runs
