#include <benchmark/benchmark.h>

#include "hmis/decomposition.hpp"
#include "hmis/engines.hpp"
#include "hmis/generators.hpp"

using namespace hmis;

static void BM_ServerGraph(benchmark::State& state) {
  Hypergraph h = gen::random_hypergraph(state.range(0), 2 * state.range(0), 4, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(server_graph(h));
  }
}
BENCHMARK(BM_ServerGraph)->Arg(64)->Arg(256)->Arg(1024);

static void BM_Decomposition(benchmark::State& state) {
  Hypergraph h = gen::random_hypergraph(state.range(0), 2 * state.range(0), 4, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    sim::Topology t = sim::Topology::from_hypergraph(h, sim::Representation::vertex_centric);
    sim::Session s(t, sim::Mode::congest(), ++seed);
    benchmark::DoNotOptimize(decomp::linial_saks(s));
  }
}
BENCHMARK(BM_Decomposition)->Arg(32)->Arg(64)->Arg(128);

static void BM_KuwEngine(benchmark::State& state) {
  Hypergraph h = gen::random_hypergraph(state.range(0), 2 * state.range(0), 4, 1);
  engines::MisOptions opt;
  opt.engine = engines::parse_engine("kuw-sqrt");
  std::uint64_t seed = 0;
  for (auto _ : state) {
    opt.seed = ++seed;
    benchmark::DoNotOptimize(engines::solve_mis(h, opt));
  }
}
BENCHMARK(BM_KuwEngine)->Arg(32)->Arg(128)->Arg(512);

static void BM_TuranRecursive(benchmark::State& state) {
  Hypergraph h = gen::random_hypergraph(state.range(0), 2 * state.range(0), 4, 1);
  engines::MisOptions opt;
  opt.engine = engines::parse_engine("turan-recursive");
  std::uint64_t seed = 0;
  for (auto _ : state) {
    opt.seed = ++seed;
    benchmark::DoNotOptimize(engines::solve_mis(h, opt));
  }
}
BENCHMARK(BM_TuranRecursive)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
