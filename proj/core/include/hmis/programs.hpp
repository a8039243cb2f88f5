#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hmis/netsim.hpp"

namespace hmis::sim::lib {

struct LeaderResult {
  NodeId leader = kNoNode;
  bool agreed = false;  // false on disconnected topologies (timeout report)
};

// Max-id flooding; O(D) rounds, quiescence-stopped.
LeaderResult elect_leader(Session& session);

struct BfsResult {
  NodeId root = kNoNode;
  std::vector<std::int32_t> level;          // hop distance, -1 if unreachable
  std::vector<LinkId> parent_link;          // kNoLink at root / unreachable
  std::vector<std::vector<LinkId>> children;
  std::uint32_t max_level = 0;              // known at all reached nodes
  bool all_reached = false;
};

// Levels by synchronous flooding, children discovered by announcements, then
// the maximum level is converged to the root and rebroadcast.
BfsResult bfs_tree(Session& session, NodeId root);

using Combine = std::function<std::vector<Word>(const std::vector<Word>&, const std::vector<Word>&)>;

// Leaf-to-root aggregation of fixed-width values along a BFS tree; the root's
// aggregate is returned. Costs O(depth) rounds.
std::vector<Word> converge(Session& session, const BfsResult& tree,
                           const std::vector<std::vector<Word>>& values, const Combine& combine);

// Root-to-leaves dissemination along the tree; every reached node learns value.
void broadcast(Session& session, const BfsResult& tree, const std::vector<Word>& value);

struct ComponentsResult {
  // min active node id of the component, -1 for inactive nodes
  std::vector<std::int64_t> label;
};

// Min-label propagation among active nodes; two active nodes share a label iff
// they are connected via active nodes. O(component diameter) rounds.
ComponentsResult connected_components(Session& session, const std::vector<bool>& active);

struct ForestResult {
  std::vector<std::int32_t> level;      // -1 off-forest
  std::vector<LinkId> parent_link;      // kNoLink at roots
  std::vector<std::int64_t> root;       // root id of the node's tree, -1 off-forest
};

// Simultaneous BFS from every root; each node learns (root, level, parent).
ForestResult bfs_forest(Session& session, const std::vector<bool>& roots);

}  // namespace hmis::sim::lib
