// hmis: generate instances, run simulated algorithms, verify outputs.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hmis/decomposition.hpp"
#include "hmis/experiment.hpp"
#include "hmis/generators.hpp"
#include "hmis/graph_apps.hpp"
#include "hmis/oracles.hpp"
#include "hmis/symmetry.hpp"

using namespace hmis;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

sim::Representation parse_repr(const std::string& s) {
  if (s == "sc") return sim::Representation::server_client;
  if (s == "vc") return sim::Representation::vertex_centric;
  throw Error("unknown representation: " + s);
}

sim::Regime parse_regime(const std::string& s) {
  if (s == "local") return sim::Regime::local;
  if (s == "congest") return sim::Regime::congest;
  throw Error("unknown regime: " + s);
}

int cmd_gen(const std::string& family, std::size_t n, std::size_t m, std::size_t dmax,
            std::size_t D, std::uint64_t seed, const std::string& out) {
  std::string text;
  if (family == "random") {
    if (m == 0) m = 2 * n;
    text = serialize(gen::random_hypergraph(n, m, dmax, seed));
  } else if (family == "star") {
    text = serialize(gen::star(n));
  } else if (family == "bridge-ring") {
    auto br = gen::bridge_ring(n, D);
    text = serialize(br.graph);
  } else if (family == "scs-subdivision") {
    Graph g = gen::random_connected_graph(n, m, seed);
    Rng rng = Rng::derive(seed, {0x736373ULL});
    std::vector<std::pair<VertexId, VertexId>> h_edges;
    for (auto e : g.edges) {
      if (rng.bernoulli(0.6)) h_edges.push_back(e);
    }
    text = serialize(gen::scs_subdivision(g, h_edges).subdivided);
  } else {
    throw Error("unknown family: " + family);
  }
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
    std::cout << "wrote " << out << " (fingerprint " << fingerprint(text) << ")\n";
  }
  return 0;
}

int cmd_run(const exp::RunSpec& base, const std::string& input, std::uint64_t trials,
            const std::string& out, const std::string& csv) {
  std::string text = read_file(input);
  std::uint64_t fp = fingerprint(text);
  std::vector<exp::RunRecord> records;
  bool graph_input = exp::algo_takes_graph(base.algo);
  Hypergraph h;
  Graph g;
  if (graph_input) {
    g = parse_graph(text);
  } else {
    h = parse_hypergraph(text);
  }
  for (std::uint64_t t = 0; t < std::max<std::uint64_t>(1, trials); ++t) {
    exp::RunSpec spec = base;
    spec.seed = base.seed + t;
    records.push_back(graph_input ? exp::run_on_graph(g, fp, spec)
                                  : exp::run_on_hypergraph(h, fp, spec));
  }
  std::string json = exp::records_json(records, /*include_wall=*/true);
  if (out.empty()) {
    std::cout << json;
  } else {
    write_file(out, json);
  }
  if (!csv.empty()) {
    std::ostringstream os;
    os << exp::csv_header() << '\n';
    for (const auto& r : records) os << exp::csv_row(r) << '\n';
    write_file(csv, os.str());
  }
  std::size_t passed = 0, failed = 0;
  for (const auto& r : records) {
    if (r.verdict == "fail") {
      failed += 1;
    } else {
      passed += 1;
    }
  }
  std::cerr << base.algo << ": " << passed << "/" << records.size() << " runs ok\n";
  return failed == 0 ? 0 : 1;
}

int cmd_verify(const std::string& input, const std::string& candidate, const std::string& check,
               const std::string& restrict_path) {
  std::string text = read_file(input);
  std::string cand = read_file(candidate);
  oracles::Verdict v;
  if (check == "mis") {
    Hypergraph h = parse_hypergraph(text);
    v = oracles::is_maximal_independent(h, parse_id_set(cand, h.num_vertices()));
  } else if (check == "rmds") {
    Graph g = parse_graph(text);
    auto set = parse_id_set(cand, g.n);
    v = oracles::is_minimal_dominating(g, set);
    if (v.pass && !restrict_path.empty()) {
      auto r = parse_id_set(read_file(restrict_path), g.n);
      std::vector<bool> in_r(g.n, false);
      for (VertexId u : r) in_r[u] = true;
      for (VertexId u : set) {
        if (!in_r[u]) v = oracles::Verdict::fail("vertex " + std::to_string(u + 1) +
                                                 " outside the restricted set");
      }
    }
  } else if (check == "mcds") {
    Graph g = parse_graph(text);
    v = oracles::is_mcds(g, parse_id_set(cand, g.n));
  } else if (check == "coloring") {
    Hypergraph h = parse_hypergraph(text);
    std::vector<VertexId> raw = parse_id_set(cand, 1u << 30);
    // candidate: one color per vertex, in vertex order
    std::istringstream is(cand);
    std::vector<std::uint32_t> colors;
    long long c;
    while (is >> c) colors.push_back(static_cast<std::uint32_t>(c));
    v = oracles::is_valid_coloring(h, colors, h.stats().max_degree + 1);
  } else if (check == "matching") {
    Hypergraph h = parse_hypergraph(text);
    auto ids = parse_id_set(cand, h.num_edges());
    std::vector<EdgeId> chosen(ids.begin(), ids.end());
    v = oracles::is_maximal_matching(h, chosen);
  } else if (check == "clique") {
    Hypergraph h = parse_hypergraph(text);
    v = oracles::is_maximal_clique(server_graph(h), parse_id_set(cand, h.num_vertices()));
  } else {
    throw Error("unknown check: " + check);
  }
  ordered_json j;
  j["check"] = check;
  j["pass"] = v.pass;
  j["witness"] = v.witness;
  std::cout << j.dump() << "\n";
  return v.pass ? 0 : 1;
}

int cmd_decompose(const std::string& input, const std::string& repr, const std::string& regime,
                  std::uint64_t seed, const std::string& out) {
  Hypergraph h = parse_hypergraph(read_file(input));
  sim::Topology topo = sim::Topology::from_hypergraph(h, parse_repr(repr));
  sim::Mode mode = parse_regime(regime) == sim::Regime::local ? sim::Mode::local()
                                                              : sim::Mode::congest();
  sim::Session session(topo, mode, seed);
  auto dec = decomp::linial_saks(session);
  auto report = decomp::verify_decomposition(dec, h, topo);

  std::map<std::pair<std::uint32_t, std::int32_t>, std::vector<std::uint32_t>> sets;
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (dec.center[v] != sim::kNoNode) {
      sets[{dec.center[v], dec.color[v]}].push_back(v + 1);
    }
  }
  ordered_json j;
  j["complete"] = dec.complete;
  j["iterations"] = dec.iterations;
  j["colors"] = dec.num_colors;
  j["rounds"] = session.total().rounds;
  j["sets"] = ordered_json::array();
  for (const auto& [key, members] : sets) {
    ordered_json s;
    s["color"] = key.second + 1;
    s["center"] = key.first + 1;
    s["members"] = members;
    j["sets"].push_back(s);
  }
  j["link_multiplicity_histogram"] = report.link_multiplicity_histogram;
  j["violations"] = report.violations;
  std::string textj = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << textj;
  } else {
    write_file(out, textj);
  }
  return report.ok() ? 0 : 1;
}

int cmd_sweep(const std::string& config_path) {
  auto cfg = exp::parse_config(read_file(config_path));
  auto get = [&](const std::string& key, const std::string& dflt) {
    auto it = cfg.find(key);
    return it == cfg.end() ? dflt : it->second;
  };
  std::vector<std::string> algos = exp::split_list(get("algos", "turan-recursive"));
  std::vector<std::string> seeds_raw = exp::split_list(get("seeds", "1"));
  std::vector<std::uint64_t> seeds;
  for (const auto& s : seeds_raw) {
    auto colon = s.find(':');
    if (colon == std::string::npos) {
      seeds.push_back(std::stoull(s));
    } else {
      std::uint64_t a = std::stoull(s.substr(0, colon));
      std::uint64_t b = std::stoull(s.substr(colon + 1));
      for (std::uint64_t x = a; x <= b; ++x) seeds.push_back(x);
    }
  }
  exp::RunSpec base;
  base.repr = parse_repr(get("repr", "sc"));
  base.regime = parse_regime(get("regime", "congest"));
  base.d = std::stoi(get("d", "3"));
  base.verify = get("verify", "true") == "true";

  struct Instance {
    std::string text;
    std::uint64_t fp;
  };
  std::vector<Instance> instances;
  if (cfg.count("inputs")) {
    for (const auto& path : exp::split_list(cfg["inputs"])) {
      std::string text = read_file(path);
      instances.push_back({text, fingerprint(text)});
    }
  } else {
    std::vector<std::string> ns = exp::split_list(get("n", "16"));
    std::size_t m_factor = std::stoul(get("m_factor", "2"));
    std::size_t dmax = std::stoul(get("dmax", "4"));
    std::size_t per_n = std::stoul(get("instances_per_n", "1"));
    std::uint64_t gseed = std::stoull(get("gen_seed", "1"));
    for (const auto& ns_s : ns) {
      std::size_t n = std::stoul(ns_s);
      for (std::size_t i = 0; i < per_n; ++i) {
        std::string text = serialize(gen::random_hypergraph(n, m_factor * n, dmax, gseed++));
        instances.push_back({text, fingerprint(text)});
      }
    }
  }

  std::vector<exp::RunRecord> records;
  for (const auto& inst : instances) {
    for (const auto& algo : algos) {
      for (std::uint64_t seed : seeds) {
        exp::RunSpec spec = base;
        spec.algo = algo;
        spec.seed = seed;
        if (exp::algo_takes_graph(algo)) {
          records.push_back(exp::run_on_graph(parse_graph(inst.text), inst.fp, spec));
        } else {
          records.push_back(exp::run_on_hypergraph(parse_hypergraph(inst.text), inst.fp, spec));
        }
      }
    }
  }
  std::string out = get("out", "results");
  write_file(out + ".json", exp::records_json(records, true));
  std::ostringstream os;
  os << exp::csv_header() << '\n';
  for (const auto& r : records) os << exp::csv_row(r) << '\n';
  write_file(out + ".csv", os.str());
  std::size_t failed = 0;
  for (const auto& r : records) {
    if (r.verdict == "fail") failed += 1;
  }
  std::cerr << "sweep: " << records.size() - failed << "/" << records.size() << " runs ok -> "
            << out << ".json\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypergraph MIS simulator and benchmark harness"};
  app.require_subcommand(1);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  std::string family = "random", gen_out;
  std::size_t gn = 16, gm = 0, gdmax = 4, gD = 2;
  std::uint64_t gseed = 1;
  gen_cmd->add_option("--family", family, "random|star|bridge-ring|scs-subdivision");
  gen_cmd->add_option("--n", gn, "vertex count");
  gen_cmd->add_option("--m", gm, "edge count (random) / extra edges (scs)");
  gen_cmd->add_option("--dmax", gdmax, "max edge size (random)");
  gen_cmd->add_option("--D", gD, "diameter parameter (bridge-ring)");
  gen_cmd->add_option("--seed", gseed, "generator seed");
  gen_cmd->add_option("-o,--out", gen_out, "output file");

  // run
  auto* run_cmd = app.add_subcommand("run", "run an algorithm on an instance");
  std::string algo = "turan-recursive", repr = "sc", regime = "congest", input, run_out, run_csv,
              restrict_path, dom_engine = "dim-reduced:kuw-sqrt";
  std::uint64_t rseed = 1, trials = 1;
  int rd = 3;
  double eps = 0.0;
  bool no_verify = false;
  run_cmd->add_option("--algo", algo,
                      "local-mis|beame-luby|turan-recursive|kuw-sqrt|dim-reduced:<inner>|"
                      "coloring|matching|clique|rmds|bmds|mcds|luby-2dim");
  run_cmd->add_option("--repr", repr, "sc|vc");
  run_cmd->add_option("--regime", regime, "local|congest");
  run_cmd->add_option("--input", input, "instance file")->required();
  run_cmd->add_option("--seed", rseed, "base seed");
  run_cmd->add_option("--trials", trials, "number of seeded trials");
  run_cmd->add_option("--d", rd, "dimension parameter");
  run_cmd->add_option("--eps", eps, "epsilon (sets d = 1 + ceil(1/eps))");
  run_cmd->add_option("--restrict", restrict_path, "restricted set file (rmds)");
  run_cmd->add_option("--out", run_out, "results JSON file");
  run_cmd->add_option("--csv", run_csv, "results CSV file");
  run_cmd->add_flag("--no-verify", no_verify, "skip oracle verification");

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "check a candidate against an oracle");
  std::string v_input, v_cand, v_check = "mis", v_restrict;
  ver_cmd->add_option("--input", v_input, "instance file")->required();
  ver_cmd->add_option("--candidate", v_cand, "candidate set file")->required();
  ver_cmd->add_option("--check", v_check, "mis|rmds|mcds|coloring|matching|clique");
  ver_cmd->add_option("--restrict", v_restrict, "restricted set file (rmds)");

  // decompose
  auto* dec_cmd = app.add_subcommand("decompose", "run the network decomposition");
  std::string d_input, d_repr = "sc", d_regime = "congest", d_out;
  std::uint64_t d_seed = 1;
  dec_cmd->add_option("--input", d_input, "hypergraph file")->required();
  dec_cmd->add_option("--repr", d_repr, "sc|vc");
  dec_cmd->add_option("--regime", d_regime, "local|congest");
  dec_cmd->add_option("--seed", d_seed, "seed");
  dec_cmd->add_option("--out", d_out, "output JSON file");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run a configured grid");
  std::string sweep_cfg;
  sweep_cmd->add_option("--config", sweep_cfg, "key=value config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) return cmd_gen(family, gn, gm, gdmax, gD, gseed, gen_out);
    if (run_cmd->parsed()) {
      exp::RunSpec spec;
      spec.algo = algo;
      spec.repr = parse_repr(repr);
      spec.regime = parse_regime(regime);
      spec.seed = rseed;
      spec.d = rd;
      if (eps > 0.0) spec.eps = eps;
      spec.verify = !no_verify;
      if (!restrict_path.empty()) {
        Graph g = parse_graph(read_file(input));
        spec.restricted = parse_id_set(read_file(restrict_path), g.n);
      }
      return cmd_run(spec, input, trials, run_out, run_csv);
    }
    if (ver_cmd->parsed()) return cmd_verify(v_input, v_cand, v_check, v_restrict);
    if (dec_cmd->parsed()) return cmd_decompose(d_input, d_repr, d_regime, d_seed, d_out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
