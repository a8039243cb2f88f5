// Acceptance suite: one pass/fail line per criterion, exit code = #failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hmis/decomposition.hpp"
#include "hmis/engines.hpp"
#include "hmis/experiment.hpp"
#include "hmis/generators.hpp"
#include "hmis/graph_apps.hpp"
#include "hmis/oracles.hpp"
#include "hmis/symmetry.hpp"

using namespace hmis;
using namespace hmis::engines;
using namespace hmis::sim;

namespace {

int failures = 0;
std::uint64_t congest_violations = 0;  // accumulated across criteria 1-7

void report(int idx, bool pass, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) failures += 1;
}

Hypergraph fig1() { return Hypergraph::build(4, {{0, 1, 2}, {1, 3}, {2, 3}}); }

struct EngineSetup {
  const char* name;
  EngineKind kind;
  EngineKind inner;
  int d;
  Representation repr;
  Regime regime;
};

const std::vector<EngineSetup>& engine_grid() {
  static const std::vector<EngineSetup> grid = {
      {"local-mis", EngineKind::local_mis, EngineKind::local_mis, 3,
       Representation::vertex_centric, Regime::local},
      {"beame-luby", EngineKind::beame_luby, EngineKind::beame_luby, 4,
       Representation::server_client, Regime::congest},
      {"turan-recursive", EngineKind::turan_recursive, EngineKind::turan_recursive, 3,
       Representation::vertex_centric, Regime::congest},
      {"kuw-sqrt", EngineKind::kuw_sqrt, EngineKind::kuw_sqrt, 3,
       Representation::server_client, Regime::congest},
      {"dim-reduced", EngineKind::dim_reduced, EngineKind::kuw_sqrt, 3,
       Representation::vertex_centric, Regime::congest},
  };
  return grid;
}

MisOptions make_options(const EngineSetup& s, std::uint64_t seed) {
  MisOptions o;
  o.engine.kind = s.kind;
  o.engine.inner = s.inner;
  o.engine.d = s.d;
  o.repr = s.repr;
  o.mode = s.regime == Regime::local ? Mode::local() : Mode::congest();
  o.seed = seed;
  return o;
}

// --- criterion 1: oracle-verified correctness sweep -------------------------
void criterion_correctness() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(20260811);
  std::size_t runs = 0, ok = 0;
  for (int inst = 0; inst < 500; ++inst) {
    std::size_t n = 2 + rng.below(11);                       // n <= 12
    std::size_t m = 1 + rng.below(20);                       // m <= 20
    std::size_t dmax = std::min<std::size_t>(n, 2 + rng.below(3));  // mixed dims <= 4
    Hypergraph h = gen::random_hypergraph(n, m, std::max<std::size_t>(2, dmax), 90000 + inst);
    for (const auto& setup : engine_grid()) {
      MisOptions o = make_options(setup, 7000 + inst);
      MisResult res = solve_mis(h, o);
      runs += 1;
      if (setup.regime == Regime::congest) congest_violations += res.trace.violations;
      if (!res.timed_out && oracles::is_maximal_independent(h, res.members())) ok += 1;
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char detail[128];
  std::snprintf(detail, sizeof detail, "%zu/%zu oracle-accepted in %.1f s", ok, runs, secs);
  report(1, ok == runs && secs < 60.0, "engine correctness sweep, 500 instances x 5 engines",
         detail);
}

// --- criterion 2: enumeration containment on the running example ------------
void criterion_enumeration() {
  Hypergraph h = fig1();
  auto family = oracles::enumerate_mis(h);
  std::size_t runs = 0, ok = 0;
  for (const auto& setup : engine_grid()) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      MisOptions o = make_options(setup, seed);
      MisResult res = solve_mis(h, o);
      runs += 1;
      if (setup.regime == Regime::congest) congest_violations += res.trace.violations;
      if (!res.timed_out &&
          std::find(family.begin(), family.end(), res.members()) != family.end()) {
        ok += 1;
      }
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "%zu/%zu outputs in the 4-member family", ok, runs);
  report(2, ok == runs, "every engine output lies in the enumerated MIS family", detail);
}

// --- criterion 3: zeta against exhaustive enumeration ------------------------
double zeta_exhaustive(const Hypergraph& h, int d) {
  const std::size_t n = h.num_vertices();
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<VertexId> x;
    for (VertexId v = 0; v < n; ++v) {
      if (mask & (1u << v)) x.push_back(v);
    }
    if (x.size() >= static_cast<std::size_t>(d)) continue;
    std::map<std::size_t, std::uint64_t> counts;
    for (const auto& e : h.edges()) {
      if (e.size() <= x.size() || e.size() > static_cast<std::size_t>(d)) continue;
      if (std::includes(e.begin(), e.end(), x.begin(), x.end())) counts[e.size() - x.size()]++;
    }
    for (auto [j, c] : counts) {
      best = std::max(best, std::exp(std::log(static_cast<double>(c)) / j));
    }
  }
  return best;
}

void criterion_zeta() {
  Rng rng(333);
  std::size_t ok = 0, runs = 0;
  for (int inst = 0; inst < 200; ++inst) {
    std::size_t n = 2 + rng.below(9);  // n <= 10
    int d = 2 + static_cast<int>(rng.below(3));
    Hypergraph h = gen::random_hypergraph(n, 1 + rng.below(12),
                                          std::min<std::size_t>(n, d), 50000 + inst);
    auto repr = inst % 2 == 0 ? Representation::server_client : Representation::vertex_centric;
    auto prof = compute_zeta(h, std::vector<bool>(n, true), d, repr, Mode::congest(),
                             1234 + inst);
    congest_violations += prof.trace.violations;
    runs += 1;
    if (std::abs(prof.zeta - zeta_exhaustive(h, d)) < 1e-9) ok += 1;
  }
  auto fig = compute_zeta(fig1(), std::vector<bool>(4, true), 3, Representation::server_client,
                          Mode::congest(), 5);
  congest_violations += fig.trace.violations;
  bool fig_ok = std::abs(fig.zeta - 2.0) < 1e-12;
  char detail[96];
  std::snprintf(detail, sizeof detail, "%zu/%zu matches, fig-1 zeta=%.3f", ok, runs, fig.zeta);
  report(3, ok == runs && fig_ok, "distributed zeta equals exhaustive enumeration", detail);
}

// --- criterion 4: Turan expectation bound ------------------------------------
void criterion_turan() {
  // 3-uniform, n=60, m=80 distinct edges: average degree exactly 4
  const std::size_t n = 60, m = 80;
  Rng rng(777);
  std::set<std::vector<VertexId>> edge_set;
  while (edge_set.size() < m) {
    std::vector<VertexId> e;
    while (e.size() < 3) {
      VertexId v = static_cast<VertexId>(rng.below(n));
      if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
    }
    std::sort(e.begin(), e.end());
    edge_set.insert(e);
  }
  Hypergraph h = Hypergraph::build(n, {edge_set.begin(), edge_set.end()});

  const int trials = 1000;
  double sum = 0, sumsq = 0;
  for (int t = 0; t < trials; ++t) {
    auto res = turan_sample(h, std::vector<bool>(n, true), 3, 4.0,
                            Representation::server_client, Mode::congest(), 40000 + t);
    congest_violations += res.trace.violations;
    double size = static_cast<double>(res.sample.size());
    sum += size;
    sumsq += size * size;
  }
  double mean = sum / trials;
  double var = (sumsq - sum * sum / trials) / (trials - 1);
  double stderr_mean = std::sqrt(var / trials);
  double bound = (n / std::sqrt(4.0)) * (1.0 - 1.0 / 3.0);  // 20
  bool pass = mean >= bound - 3 * stderr_mean;
  char detail[128];
  std::snprintf(detail, sizeof detail, "mean |S*| = %.2f vs bound %.2f - 3*%.3f", mean, bound,
                stderr_mean);
  report(4, pass, "Turan sample expectation bound, 1000 trials", detail);
}

// --- criterion 5: decomposition invariants with frozen constants -------------
void criterion_decomposition() {
  Rng rng(555);
  std::size_t runs = 0, clean = 0;
  for (int inst = 0; inst < 100; ++inst) {
    std::size_t n = 32 + rng.below(97);  // 32..128
    Hypergraph h = gen::random_hypergraph(n, 2 * n, 4, 60000 + inst);
    auto repr = inst % 2 == 0 ? Representation::server_client : Representation::vertex_centric;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Topology t = Topology::from_hypergraph(h, repr);
      Session s(t, Mode::congest(), seed);
      auto d = decomp::linial_saks(s);
      congest_violations += s.total().violations;
      auto rep = decomp::verify_decomposition(d, h, t);  // frozen C_d, C_e
      runs += 1;
      if (d.complete && rep.ok()) clean += 1;
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "%zu/%zu decompositions violation-free", clean, runs);
  report(5, clean == runs, "decomposition invariants, 100 instances x 5 seeds", detail);
}

// --- criteria 6+7: scaling sweeps --------------------------------------------
struct ScalePoint {
  std::size_t n;
  double rounds;
  double iterations;
};

std::vector<ScalePoint> scaling_points(bool local_mis) {
  std::vector<ScalePoint> points;
  for (std::size_t n : {64, 256, 1024, 4096}) {
    double rsum = 0, isum = 0;
    const int seeds = 3;
    for (int s = 0; s < seeds; ++s) {
      Hypergraph h = gen::random_hypergraph(n, 2 * n, 4, 70000 + n + s);
      MisOptions o;
      if (local_mis) {
        o.engine.kind = EngineKind::local_mis;
        o.repr = Representation::vertex_centric;
        o.mode = Mode::local();
      } else {
        o.engine.kind = EngineKind::kuw_sqrt;
        o.repr = Representation::server_client;
        o.mode = Mode::congest();
      }
      o.seed = 81000 + s;
      MisResult res = solve_mis(h, o);
      if (!local_mis) congest_violations += res.trace.violations;
      rsum += res.trace.rounds;
      isum += static_cast<double>(res.outer_iterations);
    }
    points.push_back({n, rsum / seeds, isum / seeds});
  }
  return points;
}

void criterion_local_scaling() {
  auto points = scaling_points(true);
  double c = points[0].rounds / (6.0 * 6.0);  // log2(64)^2 = 36
  bool pass = true;
  std::string detail;
  for (const auto& p : points) {
    double lg = std::log2(static_cast<double>(p.n));
    double bound = 1.5 * c * lg * lg;
    if (p.rounds > bound) pass = false;
    detail += "n=" + std::to_string(p.n) + ":" + std::to_string((int)p.rounds) + "<=" +
              std::to_string((int)bound) + " ";
  }
  report(6, pass, "LOCAL engine rounds fit C*log^2 n (C fitted at n=64)", detail);
}

void criterion_kuw_scaling() {
  auto points = scaling_points(false);
  double c = points[0].iterations / 8.0;  // sqrt(64)
  bool pass = true;
  std::string detail;
  for (const auto& p : points) {
    double bound = c * std::sqrt(static_cast<double>(p.n));
    if (p.iterations > bound) pass = false;
    detail += "n=" + std::to_string(p.n) + ":" + std::to_string((int)p.iterations) + "<=" +
              std::to_string((int)bound) + " ";
  }
  report(7, pass, "priority engine iterations fit C*sqrt(n) (C fitted at n=64)", detail);
}

void criterion_congest_soundness() {
  char detail[64];
  std::snprintf(detail, sizeof detail, "%llu budget violations",
                (unsigned long long)congest_violations);
  report(8, congest_violations == 0, "zero CONGEST bandwidth violations across criteria 1-7",
         detail);
}

// --- criterion 9: dominating-set applications --------------------------------
void criterion_dominating() {
  Rng rng(999);
  apps::DomOptions dopt;
  dopt.engine = parse_engine("dim-reduced:kuw-sqrt");
  dopt.mode = Mode::congest();

  std::size_t rmds_ok = 0, bmds_ok = 0, mcds_ok = 0;
  const int count = 200;

  for (int i = 0; i < count; ++i) {
    std::size_t n = 2 + rng.below(11);
    Graph g = gen::random_connected_graph(n, rng.below(2 * n), 91000 + i);
    std::vector<bool> r(n, false);
    std::vector<VertexId> rl;
    do {
      rl.clear();
      for (VertexId v = 0; v < n; ++v) {
        r[v] = rng.bernoulli(0.6);
        if (r[v]) rl.push_back(v);
      }
    } while (!oracles::is_dominating(g, rl));
    dopt.seed = 1000 + i;
    auto res = apps::rmds(g, r, dopt);
    bool in_r = true;
    for (VertexId v : res.set) in_r = in_r && r[v];
    if (!res.timed_out && in_r && oracles::is_minimal_dominating(g, res.set)) rmds_ok += 1;
  }

  double star_degree_sum = 0;
  for (int i = 0; i < count; ++i) {
    std::size_t n = 2 + rng.below(11);
    Graph g = gen::random_connected_graph(n, rng.below(2 * n), 92000 + i);
    dopt.seed = 2000 + i;
    auto res = apps::bmds(g, dopt);
    if (!res.timed_out && oracles::is_minimal_dominating(g, res.set)) bmds_ok += 1;
  }
  Graph star101 = gen::star(101);
  for (int s = 0; s < 100; ++s) {
    dopt.seed = 3000 + s;
    auto res = apps::bmds(star101, dopt);
    star_degree_sum += res.output_avg_degree.value();
  }
  double star_mean = star_degree_sum / 100.0;

  for (int i = 0; i < count; ++i) {
    std::size_t n = 2 + rng.below(39);  // n <= 40 for the minimality oracle
    Graph g = gen::random_connected_graph(n, rng.below(n), 93000 + i);
    dopt.seed = 4000 + i;
    auto res = apps::mcds(g, dopt);
    if (!res.timed_out && res.level_violations.empty() && oracles::is_mcds(g, res.set)) {
      mcds_ok += 1;
    }
  }

  char detail[160];
  std::snprintf(detail, sizeof detail,
                "rmds %zu/200, bmds %zu/200, mcds %zu/200, star mean degree %.3f", rmds_ok,
                bmds_ok, mcds_ok, star_mean);
  report(9,
         rmds_ok == 200 && bmds_ok == 200 && mcds_ok == 200 && star_mean <= 1.2,
         "restricted/balanced/connected minimal dominating sets", detail);
}

// --- criterion 10: coloring, matching, clique --------------------------------
void criterion_extras() {
  Rng rng(1010);
  std::size_t color_ok = 0, match_ok = 0, clique_ok = 0;
  const int count = 200;
  for (int i = 0; i < count; ++i) {
    std::size_t n = 2 + rng.below(11);
    Hypergraph h = gen::random_hypergraph(n, 1 + rng.below(16), std::min<std::size_t>(n, 4),
                                          94000 + i);
    sym::SymOptions so;
    so.repr = i % 2 == 0 ? Representation::server_client : Representation::vertex_centric;
    so.seed = 5000 + i;
    auto col = sym::hyper_coloring(h, so);
    if (!col.timed_out && col.max_color <= h.stats().max_degree + 1 &&
        oracles::is_valid_coloring(h, col.colors, h.stats().max_degree + 1)) {
      color_ok += 1;
    }
    auto mat = sym::maximal_matching(h, Mode::congest(), 6000 + i);
    if (!mat.timed_out && oracles::is_maximal_matching(h, mat.chosen)) match_ok += 1;
  }
  int clique_runs = 0;
  for (int i = 0; clique_runs < count; ++i) {
    std::size_t n = 2 + rng.below(10);
    Hypergraph h = gen::random_hypergraph(n, 1 + rng.below(14), std::min<std::size_t>(n, 4),
                                          95000 + i);
    ServerGraph sg = server_graph(h);
    if (!Graph::build(sg.n, sg.edges).connected()) continue;
    clique_runs += 1;
    sym::SymOptions so;
    so.repr = i % 2 == 0 ? Representation::server_client : Representation::vertex_centric;
    so.seed = 7000 + i;
    auto res = sym::maximal_clique(h, so);
    if (!res.timed_out && oracles::is_maximal_clique(sg, res.clique)) clique_ok += 1;
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "coloring %zu/200, matching %zu/200, clique %zu/200",
                color_ok, match_ok, clique_ok);
  report(10, color_ok == 200 && match_ok == 200 && clique_ok == 200,
         "coloring within Delta+1, matching and clique oracles", detail);
}

// --- criterion 11: dimension-reduction sampling statistics -------------------
void criterion_dim_reduction() {
  // instance with edges near the 3*log2(m+n) threshold
  const std::size_t n = 30;
  Rng rng(1111);
  std::vector<std::vector<VertexId>> edges;
  for (int e = 0; e < 10; ++e) {  // big edges, size 18..22
    std::size_t k = 18 + rng.below(5);
    std::vector<VertexId> mem;
    while (mem.size() < k) {
      VertexId v = static_cast<VertexId>(rng.below(n));
      if (std::find(mem.begin(), mem.end(), v) == mem.end()) mem.push_back(v);
    }
    edges.push_back(mem);
  }
  for (int e = 0; e < 15; ++e) {
    std::vector<VertexId> mem;
    while (mem.size() < 2 + rng.below(3)) {
      VertexId v = static_cast<VertexId>(rng.below(n));
      if (std::find(mem.begin(), mem.end(), v) == mem.end()) mem.push_back(v);
    }
    edges.push_back(mem);
  }
  Hypergraph h = Hypergraph::build(n, edges);
  const double m = static_cast<double>(h.num_edges());

  std::uint64_t samples = 0, violations = 0;
  std::uint64_t seed = 0;
  while (samples < 400) {
    MisOptions o;
    o.engine = parse_engine("dim-reduced:kuw-sqrt");
    o.repr = Representation::vertex_centric;
    o.mode = Mode::congest();
    o.seed = 86000 + (++seed);
    MisResult res = solve_mis(h, o);
    congest_violations += res.trace.violations;
    samples += res.dim_samples;
    violations += res.dim_violations;
  }
  double fraction = static_cast<double>(violations) / static_cast<double>(samples);
  double stderr_frac = std::sqrt(fraction * (1 - fraction) / static_cast<double>(samples));
  double bound = 2.0 / (m * m) + 3 * stderr_frac;
  char detail[128];
  std::snprintf(detail, sizeof detail, "%llu/%llu oversized samples (%.4f <= %.4f)",
                (unsigned long long)violations, (unsigned long long)samples, fraction, bound);
  report(11, fraction <= bound, "sampled dimension exceeds 3*log2(m+n) at the predicted rate",
         detail);
}

// --- criterion 12: SCS reduction fixtures ------------------------------------
void criterion_scs() {
  std::size_t ok = 0, total = 0;
  // the three canonical cases
  Graph tri = Graph::build(3, {{0, 1}, {1, 2}, {0, 2}});
  std::vector<std::vector<std::pair<VertexId, VertexId>>> tri_hs = {
      {{0, 1}, {1, 2}}, {{0, 1}}, {}};
  for (const auto& hset : tri_hs) {
    total += 1;
    if (gen::check_scs_reduction(tri, hset)) ok += 1;
  }
  Graph pair = Graph::build(2, {{0, 1}});
  total += 1;
  if (gen::check_scs_reduction(pair, {{0, 1}})) ok += 1;

  Rng rng(1212);
  while (total < 50) {
    std::size_t nv = 3 + rng.below(3);  // 3..5 vertices
    Graph g = gen::random_connected_graph(nv, rng.below(3), 96000 + total);
    std::vector<std::pair<VertexId, VertexId>> hs;
    for (auto e : g.edges) {
      if (rng.bernoulli(0.55)) hs.push_back(e);
    }
    total += 1;
    if (gen::check_scs_reduction(g, hs)) ok += 1;
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "%zu/%zu fixture pairs", ok, total);
  report(12, ok == total, "SCS-reduction equivalence on 50 fixtures", detail);
}

// --- criterion 13: determinism -----------------------------------------------
std::string run_grid_once() {
  std::vector<exp::RunRecord> records;
  for (int inst = 0; inst < 3; ++inst) {
    Hypergraph h = gen::random_hypergraph(10, 14, 4, 97000 + inst);
    std::string text = serialize(h);
    std::uint64_t fp = fingerprint(text);
    for (const char* algo : {"kuw-sqrt", "turan-recursive", "coloring", "matching"}) {
      for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        exp::RunSpec spec;
        spec.algo = algo;
        spec.repr = Representation::server_client;
        spec.regime = Regime::congest;
        spec.seed = seed;
        records.push_back(exp::run_on_hypergraph(h, fp, spec));
      }
    }
  }
  Graph g = gen::random_connected_graph(12, 6, 98000);
  std::string gtext = serialize(g);
  for (const char* algo : {"rmds", "mcds"}) {
    exp::RunSpec spec;
    spec.algo = algo;
    spec.seed = 5;
    records.push_back(exp::run_on_graph(g, fingerprint(gtext), spec));
  }
  return exp::records_json(records, /*include_wall=*/false);
}

void criterion_determinism() {
  std::string a = run_grid_once();
  std::string b = run_grid_once();
  char detail[64];
  std::snprintf(detail, sizeof detail, "%zu bytes, rerun %s", a.size(),
                a == b ? "identical" : "differs");
  report(13, a == b, "full grid rerun is byte-identical (wall time excluded)", detail);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_correctness();
  criterion_enumeration();
  criterion_zeta();
  criterion_turan();
  criterion_decomposition();
  criterion_local_scaling();
  criterion_kuw_scaling();
  criterion_congest_soundness();
  criterion_dominating();
  criterion_extras();
  criterion_dim_reduction();
  criterion_scs();
  criterion_determinism();
  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures;
}
