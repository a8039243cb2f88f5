#include "hmis/programs.hpp"

#include <algorithm>

namespace hmis::sim::lib {

namespace {

class FloodMax final : public Program {
 public:
  void init(NodeApi& api) override {
    best_ = api.id();
    for (const auto& le : api.links()) api.send(le.link, {best_});
    api.output() = {static_cast<std::int64_t>(best_)};
  }
  void step(NodeApi& api, std::uint32_t, const Inbox& inbox) override {
    Word incoming = best_;
    for (const auto& msg : inbox) incoming = std::max(incoming, msg.words.at(0));
    if (incoming > best_) {
      best_ = incoming;
      for (const auto& le : api.links()) api.send(le.link, {best_});
      api.output() = {static_cast<std::int64_t>(best_)};
    }
  }

 private:
  Word best_ = 0;
};

constexpr Word kBfsLevel = 1;
constexpr Word kBfsChild = 2;
constexpr Word kBfsUpMax = 3;
constexpr Word kBfsDownMax = 4;

class BfsProgram final : public Program {
 public:
  explicit BfsProgram(NodeId root) : root_(root) {}

  void init(NodeApi& api) override {
    if (api.id() == root_) {
      level_ = 0;
      for (const auto& le : api.links()) api.send(le.link, {kBfsLevel, 0});
    }
  }

  void step(NodeApi& api, std::uint32_t round, const Inbox& inbox) override {
    for (const auto& msg : inbox) {
      Word kind = msg.words.at(0);
      if (kind == kBfsLevel && level_ < 0) {
        level_ = static_cast<std::int32_t>(msg.words.at(1)) + 1;
        parent_ = msg.link;
      } else if (kind == kBfsChild) {
        children_.push_back(msg.link);
      } else if (kind == kBfsUpMax) {
        reported_ += 1;
        up_max_ = std::max(up_max_, msg.words.at(1));
      } else if (kind == kBfsDownMax) {
        down_max_ = static_cast<std::int64_t>(msg.words.at(1));
      }
    }
    if (level_ >= 0 && !announced_) {
      announced_ = true;
      for (const auto& le : api.links()) {
        if (le.link == parent_) {
          api.send(le.link, {kBfsChild});
        } else {
          api.send(le.link, {kBfsLevel, static_cast<Word>(level_)});
        }
      }
      up_max_ = static_cast<Word>(level_);
      return;
    }
    // All child announcements for a level-l node arrive exactly at round l+2.
    if (announced_ && !sent_up_ && level_ >= 0 &&
        round >= static_cast<std::uint32_t>(level_) + 2 && reported_ >= children_.size()) {
      sent_up_ = true;
      if (api.id() == root_) {
        down_max_ = static_cast<std::int64_t>(up_max_);
        for (LinkId c : children_) api.send(c, {kBfsDownMax, up_max_});
        finish(api);
      } else {
        api.send(parent_, {kBfsUpMax, up_max_});
      }
      return;
    }
    if (sent_up_ && down_max_ >= 0 && api.id() != root_) {
      for (LinkId c : children_) api.send(c, {kBfsDownMax, static_cast<Word>(down_max_)});
      finish(api);
    }
  }

 private:
  void finish(NodeApi& api) {
    auto& out = api.output();
    out = {level_, parent_ == kNoLink ? -1 : static_cast<std::int64_t>(parent_), down_max_};
    for (LinkId c : children_) out.push_back(static_cast<std::int64_t>(c));
    api.halt();
  }

  NodeId root_;
  std::int32_t level_ = -1;
  LinkId parent_ = kNoLink;
  std::vector<LinkId> children_;
  bool announced_ = false;
  bool sent_up_ = false;
  std::size_t reported_ = 0;
  Word up_max_ = 0;
  std::int64_t down_max_ = -1;
};

class ConvergeProgram final : public Program {
 public:
  ConvergeProgram(const BfsResult* tree, const std::vector<std::vector<Word>>* values,
                  const Combine* combine)
      : tree_(tree), values_(values), combine_(combine) {}

  void init(NodeApi& api) override {
    NodeId v = api.id();
    if (tree_->level[v] < 0) {
      api.halt();
      return;
    }
    acc_ = (*values_)[v];
    if (tree_->children[v].empty()) send_up(api);
  }

  void step(NodeApi& api, std::uint32_t, const Inbox& inbox) override {
    NodeId v = api.id();
    for (const auto& msg : inbox) {
      acc_ = (*combine_)(acc_, msg.words);
      reported_ += 1;
    }
    if (reported_ >= tree_->children[v].size()) send_up(api);
  }

 private:
  void send_up(NodeApi& api) {
    NodeId v = api.id();
    if (v == tree_->root) {
      auto& out = api.output();
      out.clear();
      for (Word w : acc_) out.push_back(static_cast<std::int64_t>(w));
    } else {
      api.send(tree_->parent_link[v], acc_);
    }
    api.halt();
  }

  const BfsResult* tree_;
  const std::vector<std::vector<Word>>* values_;
  const Combine* combine_;
  std::vector<Word> acc_;
  std::size_t reported_ = 0;
};

class BroadcastProgram final : public Program {
 public:
  BroadcastProgram(const BfsResult* tree, const std::vector<Word>* value)
      : tree_(tree), value_(value) {}

  void init(NodeApi& api) override {
    NodeId v = api.id();
    if (tree_->level[v] < 0) {
      api.halt();
      return;
    }
    if (v == tree_->root) deliver(api, *value_);
  }

  void step(NodeApi& api, std::uint32_t, const Inbox& inbox) override {
    if (!inbox.empty()) deliver(api, inbox.front().words);
  }

 private:
  void deliver(NodeApi& api, const std::vector<Word>& value) {
    NodeId v = api.id();
    for (LinkId c : tree_->children[v]) api.send(c, value);
    auto& out = api.output();
    out.clear();
    for (Word w : value) out.push_back(static_cast<std::int64_t>(w));
    api.halt();
  }

  const BfsResult* tree_;
  const std::vector<Word>* value_;
};

class ForestProgram final : public Program {
 public:
  explicit ForestProgram(const std::vector<bool>* roots) : roots_(roots) {}

  void init(NodeApi& api) override {
    if ((*roots_)[api.id()]) {
      root_ = api.id();
      level_ = 0;
      api.output() = {0, -1, static_cast<std::int64_t>(root_)};
      for (const auto& le : api.links()) api.send(le.link, {root_, 0});
    }
  }

  void step(NodeApi& api, std::uint32_t, const Inbox& inbox) override {
    if (level_ >= 0) return;
    for (const auto& msg : inbox) {
      root_ = msg.words.at(0);
      level_ = static_cast<std::int32_t>(msg.words.at(1)) + 1;
      parent_ = msg.link;
      break;  // inbox sorted by link id: deterministic choice
    }
    if (level_ >= 0) {
      api.output() = {level_, static_cast<std::int64_t>(parent_),
                      static_cast<std::int64_t>(root_)};
      for (const auto& le : api.links()) {
        if (le.link != parent_) api.send(le.link, {root_, static_cast<Word>(level_)});
      }
    }
  }

 private:
  const std::vector<bool>* roots_;
  Word root_ = 0;
  std::int32_t level_ = -1;
  LinkId parent_ = kNoLink;
};

class MinLabel final : public Program {
 public:
  explicit MinLabel(const std::vector<bool>* active) : active_(active) {}

  void init(NodeApi& api) override {
    if (!(*active_)[api.id()]) {
      api.halt();
      return;
    }
    label_ = api.id();
    api.output() = {static_cast<std::int64_t>(label_)};
    for (const auto& le : api.links()) api.send(le.link, {label_});
  }

  void step(NodeApi& api, std::uint32_t, const Inbox& inbox) override {
    Word incoming = label_;
    for (const auto& msg : inbox) incoming = std::min(incoming, msg.words.at(0));
    if (incoming < label_) {
      label_ = incoming;
      api.output() = {static_cast<std::int64_t>(label_)};
      for (const auto& le : api.links()) api.send(le.link, {label_});
    }
  }

 private:
  const std::vector<bool>* active_;
  Word label_ = 0;
};

}  // namespace

LeaderResult elect_leader(Session& session) {
  RunOptions opt;
  opt.stop_on_quiescence = true;
  RunTrace t = session.run_phase(
      [](NodeId, const Topology&) { return std::make_unique<FloodMax>(); }, opt);
  LeaderResult res;
  res.agreed = true;
  for (const auto& out : t.outputs) {
    if (out.empty()) { res.agreed = false; break; }
    if (res.leader == kNoNode) {
      res.leader = static_cast<NodeId>(out[0]);
    } else if (res.leader != static_cast<NodeId>(out[0])) {
      res.agreed = false;
      break;
    }
  }
  return res;
}

BfsResult bfs_tree(Session& session, NodeId root) {
  RunOptions opt;
  opt.stop_on_quiescence = true;  // only unreachable nodes fail to halt
  RunTrace t = session.run_phase(
      [root](NodeId, const Topology&) { return std::make_unique<BfsProgram>(root); }, opt);
  const std::size_t n = session.topology().num_nodes();
  BfsResult res;
  res.root = root;
  res.level.assign(n, -1);
  res.parent_link.assign(n, kNoLink);
  res.children.assign(n, {});
  res.all_reached = true;
  for (NodeId v = 0; v < n; ++v) {
    const auto& out = t.outputs[v];
    if (out.size() < 3) {
      res.all_reached = false;
      continue;
    }
    res.level[v] = static_cast<std::int32_t>(out[0]);
    res.parent_link[v] = out[1] < 0 ? kNoLink : static_cast<LinkId>(out[1]);
    res.max_level = std::max<std::uint32_t>(res.max_level, static_cast<std::uint32_t>(out[2]));
    for (std::size_t i = 3; i < out.size(); ++i) {
      res.children[v].push_back(static_cast<LinkId>(out[i]));
    }
  }
  return res;
}

std::vector<Word> converge(Session& session, const BfsResult& tree,
                           const std::vector<std::vector<Word>>& values,
                           const Combine& combine) {
  RunTrace t = session.run_phase(
      [&](NodeId, const Topology&) {
        return std::make_unique<ConvergeProgram>(&tree, &values, &combine);
      });
  std::vector<Word> out;
  for (std::int64_t w : t.outputs[tree.root]) out.push_back(static_cast<Word>(w));
  return out;
}

void broadcast(Session& session, const BfsResult& tree, const std::vector<Word>& value) {
  session.run_phase([&](NodeId, const Topology&) {
    return std::make_unique<BroadcastProgram>(&tree, &value);
  });
}

ForestResult bfs_forest(Session& session, const std::vector<bool>& roots) {
  RunOptions opt;
  opt.stop_on_quiescence = true;
  RunTrace t = session.run_phase(
      [&](NodeId, const Topology&) { return std::make_unique<ForestProgram>(&roots); }, opt);
  const std::size_t n = session.topology().num_nodes();
  ForestResult res;
  res.level.assign(n, -1);
  res.parent_link.assign(n, kNoLink);
  res.root.assign(n, -1);
  for (NodeId v = 0; v < n; ++v) {
    const auto& out = t.outputs[v];
    if (out.size() < 3) continue;
    res.level[v] = static_cast<std::int32_t>(out[0]);
    res.parent_link[v] = out[1] < 0 ? kNoLink : static_cast<LinkId>(out[1]);
    res.root[v] = out[2];
  }
  return res;
}

ComponentsResult connected_components(Session& session, const std::vector<bool>& active) {
  RunOptions opt;
  opt.stop_on_quiescence = true;
  RunTrace t = session.run_phase(
      [&](NodeId, const Topology&) { return std::make_unique<MinLabel>(&active); }, opt);
  ComponentsResult res;
  res.label.assign(session.topology().num_nodes(), -1);
  for (NodeId v = 0; v < res.label.size(); ++v) {
    if (!t.outputs[v].empty()) res.label[v] = t.outputs[v][0];
  }
  return res;
}

}  // namespace hmis::sim::lib
