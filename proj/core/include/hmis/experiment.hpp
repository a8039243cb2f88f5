#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hmis/engines.hpp"
#include "hmis/graph.hpp"
#include "hmis/hypergraph.hpp"

namespace hmis::exp {

// One row of an experiment; the JSON record is authoritative, the CSV a
// fixed-column projection.
struct RunRecord {
  std::string algo;
  std::string representation;  // sc | vc
  std::string regime;          // local | congest
  std::uint64_t fingerprint = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t rounds = 0;
  std::uint64_t messages = 0;
  std::uint64_t max_bits = 0;
  std::uint64_t violations = 0;
  std::uint64_t iterations = 0;
  std::size_t output_size = 0;
  std::vector<std::uint32_t> output;  // 1-based ids (or colors for coloring)
  std::string verdict;                // pass | fail | skipped
  std::string anomaly;
  double wall_ms = 0.0;
};

// Exact key order: algo, representation, regime, fingerprint, seed, n, m,
// rounds, messages, max_bits, violations, iterations, output_size, output,
// verdict, anomaly [, wall_ms]
std::string record_json(const RunRecord& r, bool include_wall);
std::string records_json(const std::vector<RunRecord>& rs, bool include_wall);

std::string csv_header();
std::string csv_row(const RunRecord& r);

struct RunSpec {
  std::string algo = "turan-recursive";
  sim::Representation repr = sim::Representation::server_client;
  sim::Regime regime = sim::Regime::congest;
  std::uint64_t seed = 1;
  int d = 3;
  std::optional<double> eps;
  std::vector<VertexId> restricted;  // rmds only (empty: R = V)
  bool verify = true;
};

bool algo_takes_graph(const std::string& algo);

// Runs one algorithm on one instance, verifying with the matching oracle when
// its size guard permits.
RunRecord run_on_hypergraph(const Hypergraph& h, std::uint64_t fingerprint, const RunSpec& spec);
RunRecord run_on_graph(const Graph& g, std::uint64_t fingerprint, const RunSpec& spec);

// key = value configuration for grid sweeps; '#' comments, lists comma split
std::map<std::string, std::string> parse_config(const std::string& text);
std::vector<std::string> split_list(const std::string& value);

}  // namespace hmis::exp
