#include "hmis/multiplex.hpp"

#include <algorithm>

namespace hmis::sim {

namespace {

// Wire framing per logical message: [tag, length, payload...]. Frames on one
// link direction arrive in FIFO order, so a stateful parser per link suffices.
struct FrameParser {
  std::uint32_t tag = 0;
  std::size_t expect = 0;
  std::size_t header = 0;  // header words consumed (0..2)
  std::vector<Word> buf;
};

class HostApi final : public SubApi {
 public:
  NodeId node_id = 0;
  const ContainerView* cv = nullptr;
  Rng stream{0};
  std::vector<std::int64_t>* out = nullptr;
  bool finished = false;
  std::vector<std::pair<LinkId, std::vector<Word>>>* sink = nullptr;
  std::uint32_t tag = 0;

  NodeId node() const override { return node_id; }
  const ContainerView& view() const override { return *cv; }
  Rng& rng() override { return stream; }
  void send(LinkId link, std::vector<Word> words) override {
    sink->emplace_back(link, std::move(words));
  }
  std::vector<std::int64_t>& output() override { return *out; }
  void done() override { finished = true; }
};

struct SubSlot {
  ContainerView view;
  std::unique_ptr<SubProgram> sub;
  HostApi api;
  std::vector<std::int64_t> output;
  VInbox pending;
};

class MultiplexHost final : public Program {
 public:
  MultiplexHost(NodeId node, const std::vector<ContainerView>& views, const SubFactory& factory,
                PhaseCoordinator* coord, std::uint64_t seed, std::uint64_t phase_salt,
                std::uint32_t capacity_words,
                std::vector<std::pair<std::uint32_t, std::vector<std::int64_t>>>* harvest)
      : coord_(coord), capacity_(capacity_words), harvest_(harvest) {
    slots_.reserve(views.size());
    for (const auto& v : views) {
      auto slot = std::make_unique<SubSlot>();
      slot->view = v;
      slot->sub = factory(node, slot->view);
      slot->api.node_id = node;
      slot->api.cv = &slot->view;
      slot->api.stream = Rng::derive(seed, {phase_salt, 0x737562ULL, node, v.tag});
      slot->api.out = &slot->output;
      slot->api.sink = &staged_;
      slot->api.tag = v.tag;
      slots_.push_back(std::move(slot));
    }
    std::sort(slots_.begin(), slots_.end(),
              [](const auto& a, const auto& b) { return a->view.tag < b->view.tag; });
  }

  void init(NodeApi& api) override {
    for (auto& s : slots_) {
      if (!s->api.finished) {
        s->sub->start(s->api);
        stage_to_queues(s->api.tag);
      }
    }
    flush(api);
    maybe_halt(api);
  }

  void step(NodeApi& api, std::uint32_t, const Inbox& inbox) override {
    for (const auto& msg : inbox) {
      auto& parser = parsers_[msg.link];
      for (Word w : msg.words) feed(parser, msg.link, msg.from, w);
    }
    if (coord_->tick) {
      vround_ += 1;
      for (auto& s : slots_) {
        VInbox delivery = std::move(s->pending);
        s->pending.clear();
        std::sort(delivery.begin(), delivery.end(),
                  [](const VMessage& a, const VMessage& b) { return a.link < b.link; });
        if (!s->api.finished) {
          s->sub->vstep(s->api, vround_, delivery);
          stage_to_queues(s->api.tag);
        }
      }
    }
    flush(api);
    maybe_halt(api);
  }

 private:
  void feed(FrameParser& p, LinkId link, NodeId from, Word w) {
    if (p.header == 0) {
      p.tag = static_cast<std::uint32_t>(w);
      p.header = 1;
      return;
    }
    if (p.header == 1) {
      p.expect = static_cast<std::size_t>(w);
      p.header = 2;
      p.buf.clear();
      if (p.expect == 0) {
        dispatch(p, link, from);
      }
      return;
    }
    p.buf.push_back(w);
    if (p.buf.size() == p.expect) dispatch(p, link, from);
  }

  void dispatch(FrameParser& p, LinkId link, NodeId from) {
    auto it = std::lower_bound(slots_.begin(), slots_.end(), p.tag,
                               [](const auto& s, std::uint32_t tag) { return s->view.tag < tag; });
    if (it != slots_.end() && (*it)->view.tag == p.tag) {
      (*it)->pending.push_back({link, from, std::move(p.buf)});
    }
    p.buf = {};
    p.header = 0;
    p.expect = 0;
  }

  void stage_to_queues(std::uint32_t tag) {
    for (auto& [link, words] : staged_) {
      auto& q = queues_[link];
      q.push_back(tag);
      q.push_back(static_cast<Word>(words.size()));
      for (Word w : words) q.push_back(w);
      coord_->queued_words += 2 + static_cast<std::int64_t>(words.size());
    }
    staged_.clear();
  }

  void flush(NodeApi& api) {
    for (auto& [link, q] : queues_) {
      if (q.empty()) continue;
      std::size_t take = std::min<std::size_t>(q.size(), capacity_);
      std::vector<Word> payload(q.begin(), q.begin() + take);
      q.erase(q.begin(), q.begin() + take);
      coord_->queued_words -= static_cast<std::int64_t>(take);
      api.send(link, std::move(payload));
    }
  }

  void maybe_halt(NodeApi& api) {
    for (const auto& [link, q] : queues_) {
      if (!q.empty()) return;
    }
    for (const auto& s : slots_) {
      if (!s->api.finished) return;
    }
    for (auto& s : slots_) {
      harvest_->emplace_back(s->view.tag, std::move(s->output));
    }
    api.halt();
  }

  PhaseCoordinator* coord_;
  std::uint32_t capacity_;
  std::vector<std::pair<std::uint32_t, std::vector<std::int64_t>>>* harvest_;
  std::vector<std::unique_ptr<SubSlot>> slots_;
  std::map<LinkId, FrameParser> parsers_;
  std::map<LinkId, std::deque<Word>> queues_;
  std::vector<std::pair<LinkId, std::vector<Word>>> staged_;
  std::uint32_t vround_ = 0;
};

}  // namespace

MultiplexResult run_multiplexed(Session& session,
                                const std::vector<std::vector<ContainerView>>& views,
                                const SubFactory& factory, RunOptions options) {
  const Topology& topo = session.topology();
  PhaseCoordinator coord;
  options.coordinator = &coord;

  const std::uint32_t capacity = session.mode().regime == Regime::congest
                                     ? session.mode().word_factor
                                     : std::numeric_limits<std::uint32_t>::max();

  MultiplexResult res;
  res.outputs.assign(topo.num_nodes(), {});
  std::uint64_t salt = session.next_phase_salt();
  options.phase_salt = salt;

  RunTrace t = run(
      topo,
      [&](NodeId v, const Topology&) -> std::unique_ptr<Program> {
        return std::make_unique<MultiplexHost>(v, views[v], factory, &coord, session.seed(),
                                               salt, capacity, &res.outputs[v]);
      },
      session.mode(), session.seed(), options);
  session.total().accumulate(t);
  res.trace = t;
  return res;
}

std::vector<std::vector<ContainerView>> whole_network_views(
    const Topology& topo, const std::vector<std::int32_t>& level,
    const std::vector<LinkId>& parent_link, std::uint32_t tag) {
  std::vector<std::vector<ContainerView>> views(topo.num_nodes());
  for (NodeId v = 0; v < topo.num_nodes(); ++v) {
    if (level[v] < 0) continue;  // unreachable nodes sit the phase out
    ContainerView cv;
    cv.tag = tag;
    cv.is_root = level[v] == 0;
    cv.parent_link = parent_link[v];
    cv.depth = static_cast<std::uint32_t>(level[v]);
    for (const auto& le : topo.links_of(v)) cv.links.push_back(le);
    views[v].push_back(std::move(cv));
  }
  return views;
}

}  // namespace hmis::sim
