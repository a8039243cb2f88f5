#include "hmis/experiment.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "hmis/graph_apps.hpp"
#include "hmis/oracles.hpp"
#include "hmis/symmetry.hpp"

namespace hmis::exp {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json to_ordered(const RunRecord& r, bool include_wall) {
  ordered_json j;
  j["algo"] = r.algo;
  j["representation"] = r.representation;
  j["regime"] = r.regime;
  j["fingerprint"] = r.fingerprint;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["m"] = r.m;
  j["rounds"] = r.rounds;
  j["messages"] = r.messages;
  j["max_bits"] = r.max_bits;
  j["violations"] = r.violations;
  j["iterations"] = r.iterations;
  j["output_size"] = r.output_size;
  j["output"] = r.output;
  j["verdict"] = r.verdict;
  j["anomaly"] = r.anomaly;
  if (include_wall) j["wall_ms"] = r.wall_ms;
  return j;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void fill_trace(RunRecord& rec, const sim::RunTrace& t) {
  rec.rounds = t.rounds;
  rec.messages = t.messages;
  rec.max_bits = t.max_payload_bits;
  rec.violations = t.violations;
}

}  // namespace

std::string record_json(const RunRecord& r, bool include_wall) {
  return to_ordered(r, include_wall).dump();
}

std::string records_json(const std::vector<RunRecord>& rs, bool include_wall) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rs) arr.push_back(to_ordered(r, include_wall));
  return arr.dump(2) + "\n";
}

std::string csv_header() {
  return "fingerprint,algo,representation,regime,seed,n,m,rounds,messages,max_bits,"
         "violations,iterations,output_size,verdict,wall_ms";
}

std::string csv_row(const RunRecord& r) {
  std::ostringstream os;
  os << r.fingerprint << ',' << r.algo << ',' << r.representation << ',' << r.regime << ','
     << r.seed << ',' << r.n << ',' << r.m << ',' << r.rounds << ',' << r.messages << ','
     << r.max_bits << ',' << r.violations << ',' << r.iterations << ',' << r.output_size << ','
     << r.verdict << ',' << r.wall_ms;
  return os.str();
}

bool algo_takes_graph(const std::string& algo) {
  return algo == "rmds" || algo == "bmds" || algo == "mcds" || algo == "luby-2dim";
}

RunRecord run_on_hypergraph(const Hypergraph& h, std::uint64_t fingerprint,
                            const RunSpec& spec) {
  RunRecord rec;
  rec.algo = spec.algo;
  rec.representation = sim::to_string(spec.repr);
  rec.regime = sim::to_string(spec.regime);
  rec.fingerprint = fingerprint;
  rec.seed = spec.seed;
  rec.n = h.num_vertices();
  rec.m = h.num_edges();
  sim::Mode mode = spec.regime == sim::Regime::local ? sim::Mode::local() : sim::Mode::congest();
  Timer timer;

  if (spec.algo == "coloring") {
    sym::SymOptions so{spec.repr, mode, spec.seed};
    auto res = sym::hyper_coloring(h, so);
    fill_trace(rec, res.trace);
    rec.anomaly = res.anomaly;
    rec.output = res.colors;
    rec.output_size = res.max_color;
    if (res.timed_out) {
      rec.verdict = "fail";
    } else if (spec.verify) {
      auto v = oracles::is_valid_coloring(h, res.colors, h.stats().max_degree + 1);
      rec.verdict = v.pass ? "pass" : "fail";
      if (!v.pass) rec.anomaly = v.witness;
    } else {
      rec.verdict = "skipped";
    }
  } else if (spec.algo == "matching") {
    auto res = sym::maximal_matching(h, mode, spec.seed);
    fill_trace(rec, res.trace);
    rec.iterations = res.iterations;
    for (EdgeId e : res.chosen) rec.output.push_back(e + 1);
    rec.output_size = res.chosen.size();
    if (res.timed_out) {
      rec.verdict = "fail";
    } else if (spec.verify) {
      auto v = oracles::is_maximal_matching(h, res.chosen);
      rec.verdict = v.pass ? "pass" : "fail";
      if (!v.pass) rec.anomaly = v.witness;
    } else {
      rec.verdict = "skipped";
    }
  } else if (spec.algo == "clique") {
    sym::SymOptions so{spec.repr, mode, spec.seed};
    auto res = sym::maximal_clique(h, so);
    fill_trace(rec, res.trace);
    rec.iterations = res.iterations;
    rec.anomaly = res.anomaly;
    for (VertexId v : res.clique) rec.output.push_back(v + 1);
    rec.output_size = res.clique.size();
    if (res.timed_out) {
      rec.verdict = "fail";
    } else if (spec.verify) {
      auto v = oracles::is_maximal_clique(server_graph(h), res.clique);
      rec.verdict = v.pass ? "pass" : "fail";
      if (!v.pass) rec.anomaly = v.witness;
    } else {
      rec.verdict = "skipped";
    }
  } else {
    engines::MisOptions mo;
    mo.engine = engines::parse_engine(spec.algo);
    mo.engine.d = spec.d;
    mo.engine.eps = spec.eps;
    mo.repr = spec.repr;
    mo.mode = mode;
    mo.seed = spec.seed;
    auto res = engines::solve_mis(h, mo);
    fill_trace(rec, res.trace);
    rec.iterations = res.outer_iterations;
    rec.anomaly = res.anomaly;
    auto members = res.members();
    for (VertexId v : members) rec.output.push_back(v + 1);
    rec.output_size = members.size();
    if (res.timed_out) {
      rec.verdict = "fail";
    } else if (spec.verify) {
      auto v = oracles::is_maximal_independent(h, members);
      rec.verdict = v.pass ? "pass" : "fail";
      if (!v.pass) rec.anomaly = v.witness;
    } else {
      rec.verdict = "skipped";
    }
  }
  rec.wall_ms = timer.ms();
  return rec;
}

RunRecord run_on_graph(const Graph& g, std::uint64_t fingerprint, const RunSpec& spec) {
  RunRecord rec;
  rec.algo = spec.algo;
  rec.representation = sim::to_string(spec.repr);
  rec.regime = sim::to_string(spec.regime);
  rec.fingerprint = fingerprint;
  rec.seed = spec.seed;
  rec.n = g.n;
  rec.m = g.edges.size();
  sim::Mode mode = spec.regime == sim::Regime::local ? sim::Mode::local() : sim::Mode::congest();
  Timer timer;

  if (spec.algo == "luby-2dim") {
    auto res = sym::luby_mis_2dim(g, mode, spec.seed);
    fill_trace(rec, res.trace);
    rec.iterations = res.iterations;
    for (VertexId v : res.set) rec.output.push_back(v + 1);
    rec.output_size = res.set.size();
    if (res.timed_out) {
      rec.verdict = "fail";
    } else if (spec.verify) {
      auto v = oracles::is_maximal_independent(as_hypergraph(g), res.set);
      rec.verdict = v.pass ? "pass" : "fail";
    } else {
      rec.verdict = "skipped";
    }
    rec.wall_ms = timer.ms();
    return rec;
  }

  apps::DomOptions dopt;
  dopt.engine = engines::parse_engine("dim-reduced:kuw-sqrt");
  dopt.mode = mode;
  dopt.seed = spec.seed;
  apps::DomResult res;
  std::vector<bool> restricted(g.n, true);
  if (spec.algo == "rmds") {
    if (!spec.restricted.empty()) {
      restricted.assign(g.n, false);
      for (VertexId v : spec.restricted) restricted[v] = true;
    }
    res = apps::rmds(g, restricted, dopt);
  } else if (spec.algo == "bmds") {
    res = apps::bmds(g, dopt);
  } else if (spec.algo == "mcds") {
    res = apps::mcds(g, dopt);
  } else {
    throw Error("unknown graph algorithm: " + spec.algo);
  }
  fill_trace(rec, res.trace);
  rec.anomaly = res.anomaly;
  for (VertexId v : res.set) rec.output.push_back(v + 1);
  rec.output_size = res.set.size();
  if (res.precondition_failed || res.timed_out) {
    rec.verdict = "fail";
  } else if (!spec.verify) {
    rec.verdict = "skipped";
  } else if (spec.algo == "mcds") {
    if (g.n <= 40) {
      auto v = oracles::is_mcds(g, res.set);
      rec.verdict = v.pass ? "pass" : "fail";
      if (!v.pass) rec.anomaly = v.witness;
    } else {
      rec.verdict = "skipped";  // minimality oracle guard
    }
  } else {
    auto v = oracles::is_minimal_dominating(g, res.set);
    rec.verdict = v.pass ? "pass" : "fail";
    if (!v.pass) rec.anomaly = v.witness;
    if (spec.algo == "rmds" && v.pass) {
      for (VertexId u : res.set) {
        if (!restricted[u]) {
          rec.verdict = "fail";
          rec.anomaly = "output leaves the restricted set";
        }
      }
    }
  }
  rec.wall_ms = timer.ms();
  return rec;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t\r");
      std::size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) out[key] = value;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : value) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '\t') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace hmis::exp
