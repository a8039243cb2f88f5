#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "hmis/netsim.hpp"

namespace hmis::sim {

// One node's view of a cluster subgraph it belongs to: the recorded incident
// links, the first-receipt link toward the center, and its depth. A phase may
// run many containers at once; payloads are tagged and pipelined within the
// per-link budget, and virtual rounds advance when the network drains.
struct ContainerView {
  std::uint32_t tag = 0;
  std::uint32_t color = 0;
  bool is_root = false;
  LinkId parent_link = kNoLink;
  std::uint32_t depth = 0;
  std::vector<LinkEnd> links;  // container links incident to this node
};

struct VMessage {
  LinkId link;
  NodeId from;
  std::vector<Word> words;
};
using VInbox = std::vector<VMessage>;

class SubApi {
 public:
  virtual ~SubApi() = default;
  virtual NodeId node() const = 0;
  virtual const ContainerView& view() const = 0;
  virtual Rng& rng() = 0;
  // Queues one logical message; the host frames it and drains the queue at
  // the link budget, so oversize messages pipeline across real rounds.
  virtual void send(LinkId link, std::vector<Word> words) = 0;
  virtual std::vector<std::int64_t>& output() = 0;
  virtual void done() = 0;
};

class SubProgram {
 public:
  virtual ~SubProgram() = default;
  virtual void start(SubApi&) {}
  virtual void vstep(SubApi&, std::uint32_t vround, const VInbox& inbox) = 0;
};

using SubFactory =
    std::function<std::unique_ptr<SubProgram>(NodeId, const ContainerView&)>;

struct MultiplexResult {
  RunTrace trace;
  std::uint32_t vrounds = 0;
  // per node: (container tag, outputs) pairs, ascending tag
  std::vector<std::vector<std::pair<std::uint32_t, std::vector<std::int64_t>>>> outputs;
};

// Runs every (node, container) sub-program to completion in lockstep virtual
// rounds. Ends when all sub-programs are done and the queues are drained.
MultiplexResult run_multiplexed(Session& session,
                                const std::vector<std::vector<ContainerView>>& views,
                                const SubFactory& factory, RunOptions options = {});

// A single whole-network container built from a BFS tree: tag, parent links
// and depths from the tree, links = all incident links.
std::vector<std::vector<ContainerView>> whole_network_views(
    const Topology& topo, const std::vector<std::int32_t>& level,
    const std::vector<LinkId>& parent_link, std::uint32_t tag);

}  // namespace hmis::sim
