#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hmis/rational.hpp"

namespace hmis {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HypergraphStats {
  std::uint32_t max_degree = 0;   // Delta
  std::uint32_t dimension = 0;    // dim, max edge cardinality
  Rational avg_degree;            // delta, exact
};

// Immutable after construction; safe to share across concurrent readers.
class Hypergraph {
 public:
  Hypergraph() = default;

  // Normalizes: members sorted and deduplicated within an edge, edge list
  // sorted lexicographically, duplicate edges collapsed unless keep_duplicates.
  static Hypergraph build(std::size_t n, std::vector<std::vector<VertexId>> edges,
                          bool keep_duplicates = false);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<VertexId>& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<std::vector<VertexId>>& edges() const { return edges_; }
  const std::vector<EdgeId>& incident(VertexId v) const;

  std::size_t degree(VertexId v) const;
  HypergraphStats stats() const;

  bool operator==(const Hypergraph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<VertexId>> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

// 2-dimensional co-occurrence graph: (u,v) is an edge iff some hyperedge
// contains both.
struct ServerGraph {
  std::size_t n = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;          // u < v, sorted
  std::vector<std::vector<VertexId>> adj;                    // sorted neighbor lists
  bool has_edge(VertexId u, VertexId v) const;
};

ServerGraph server_graph(const Hypergraph& h);

// View of the sub-hypergraph induced by a vertex subset: kept edges are the
// edges fully contained in the kept set.
class SubHypergraphView {
 public:
  SubHypergraphView(const Hypergraph& base, std::vector<VertexId> kept);

  const Hypergraph& base() const { return *base_; }
  const std::vector<VertexId>& kept_vertices() const { return kept_; }
  const std::vector<EdgeId>& kept_edges() const { return kept_edges_; }
  bool keeps(VertexId v) const { return in_view_[v]; }

 private:
  const Hypergraph* base_;
  std::vector<VertexId> kept_;
  std::vector<bool> in_view_;
  std::vector<EdgeId> kept_edges_;
};

SubHypergraphView induced(const Hypergraph& h, std::span<const VertexId> keep);

// Text format: line 1 "n m", then m lines "k v1 ... vk" with 1-based ids.
// Blank lines and '#' comments are ignored.
Hypergraph parse_hypergraph(std::string_view text);
std::string serialize(const Hypergraph& h);

std::uint64_t fingerprint(std::string_view content);

}  // namespace hmis
