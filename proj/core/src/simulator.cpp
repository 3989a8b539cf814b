// SPDX-License-Identifier: Apache-2.0
#include "galois/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <unordered_map>

#include "galois/envelope.hpp"

namespace galois::netsim {
namespace {

using protocol::Envelope;
using protocol::MessageKind;

// Independent rng streams derived from the scenario seed.
enum Stream : std::uint64_t {
  kTopologyStream = 1,
  kSetupStream = 2,
  kHeartbeatStream = 3,
  kLossStream = 4,
  kPayloadStream = 0x10000,
  kNodeStream = 0x20000,
  kAdversaryStream = 0x30000,
};

Time from_seconds(double s) { return Time(static_cast<std::int64_t>(std::llround(s * 1e9))); }
double to_ms(Time t) { return static_cast<double>(t.count()) / 1e6; }

struct NodeOutput {
  std::vector<Envelope> control;
  std::vector<crypto::Digest> delivered;
  bool redundant = false;
};

class SimNode {
 public:
  virtual ~SimNode() = default;
  virtual NodeOutput publish(Bytes value) = 0;
  virtual NodeOutput receive(const Envelope& env) = 0;
  virtual NodeOutput heartbeat(Time now) = 0;
  virtual std::optional<Envelope> next_payload() = 0;
  virtual std::shared_ptr<const Bytes> value(const crypto::Digest& m) const = 0;
  virtual void note_publisher(const crypto::Digest&, PeerId) {}
  virtual const protocol::OptimumNode* optimum() const { return nullptr; }
  virtual const gossipsub::GossipsubNode* gossip() const { return nullptr; }
};

class OptimumSimNode final : public SimNode {
 public:
  OptimumSimNode(protocol::NodeConfig config, bool byzantine, double pollutionProb,
                 std::uint64_t adversarySeed)
      : keys_(config.keys),
        scheme_(config.scheme),
        byzantine_(byzantine),
        pollutionProb_(pollutionProb),
        rng_(adversarySeed),
        node_((config.honorDone = !byzantine, std::move(config))) {}

  NodeOutput publish(Bytes value) override { return convert(node_.on_publish(std::move(value))); }
  NodeOutput receive(const Envelope& env) override { return convert(node_.on_envelope(env)); }
  NodeOutput heartbeat(Time now) override { return convert(node_.on_heartbeat(now)); }

  std::optional<Envelope> next_payload() override {
    auto out = node_.next_shard();
    if (!out) {
      return std::nullopt;
    }
    rlnc::ShardPtr shard = out->shard;
    if (byzantine_ && uniform_unit(rng_) < pollutionProb_) {
      rlnc::Shard corrupted = *shard;
      const std::size_t pos = uniform_below(rng_, corrupted.payload.size());
      const auto delta = static_cast<std::uint8_t>(1 + uniform_below(rng_, 255));
      corrupted.payload[pos] ^= delta;
      rlnc::sign(corrupted, keys_, *scheme_);
      shard = std::make_shared<const rlnc::Shard>(std::move(corrupted));
    }
    return protocol::make_shard(node_.id(), out->to, std::move(shard));
  }

  std::shared_ptr<const Bytes> value(const crypto::Digest& m) const override {
    return node_.deliver(m).second;
  }
  void note_publisher(const crypto::Digest& m, PeerId p) override { node_.note_publisher(m, p); }
  const protocol::OptimumNode* optimum() const override { return &node_; }

 private:
  NodeOutput convert(protocol::Effects fx) const {
    NodeOutput out;
    out.control = std::move(fx.control);
    if (byzantine_) {
      // A polluter never raises its hand.
      out.control.erase(std::remove_if(out.control.begin(), out.control.end(),
                                       [](const Envelope& e) {
                                         return e.kind == MessageKind::kPolluted;
                                       }),
                        out.control.end());
    }
    out.delivered = std::move(fx.delivered);
    out.redundant = fx.redundant;
    return out;
  }

  crypto::KeyPair keys_;
  std::shared_ptr<const crypto::SignatureScheme> scheme_;
  bool byzantine_;
  double pollutionProb_;
  Rng rng_;
  protocol::OptimumNode node_;
};

class GossipSimNode final : public SimNode {
 public:
  explicit GossipSimNode(gossipsub::GossipConfig config) : node_(std::move(config)) {}

  NodeOutput publish(Bytes value) override { return convert(node_.on_publish(std::move(value))); }
  NodeOutput receive(const Envelope& env) override { return convert(node_.on_envelope(env)); }
  NodeOutput heartbeat(Time now) override { return convert(node_.on_heartbeat(now)); }
  std::optional<Envelope> next_payload() override { return node_.next_message(); }
  std::shared_ptr<const Bytes> value(const crypto::Digest& m) const override {
    return node_.deliver(m);
  }
  const gossipsub::GossipsubNode* gossip() const override { return &node_; }

 private:
  static NodeOutput convert(gossipsub::GossipEffects fx) {
    return NodeOutput{std::move(fx.control), std::move(fx.delivered), fx.duplicate};
  }

  gossipsub::GossipsubNode node_;
};

enum class EventKind { kDeliver, kUplinkReady, kHeartbeat, kPublish };

struct Event {
  Time at{0};
  std::uint64_t seq = 0;
  EventKind kind = EventKind::kPublish;
  std::size_t node = 0;
  std::size_t index = 0;  // message index for kPublish
  std::uint64_t size = 0;
  Envelope env;
};

struct LaterFirst {
  bool operator()(const Event& a, const Event& b) const {
    return a.at != b.at ? a.at > b.at : a.seq > b.seq;
  }
};

struct Link {
  std::deque<Envelope> control;
  bool busy = false;
  Time downFree{0};
};

bool is_payload_plane(MessageKind kind) {
  return kind != MessageKind::kIHave && kind != MessageKind::kIDontWant;
}

}  // namespace

std::vector<bool> inject_adversary(std::size_t n, double fraction,
                                   const std::vector<PeerId>& publishers, Rng& rng) {
  std::vector<bool> out(n, false);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(publishers.begin(), publishers.end(), peer(i)) == publishers.end()) {
      candidates.push_back(i);
    }
  }
  auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  count = std::min(count, candidates.size());
  shuffle(candidates, rng);
  for (std::size_t i = 0; i < count; ++i) {
    out[candidates[i]] = true;
  }
  return out;
}

Time transfer_time(std::uint64_t bytes, double upBps, double downBps, double latencyMs) {
  const double bits = static_cast<double>(bytes) * 8.0;
  return from_seconds(bits / std::min(upBps, downBps) + latencyMs / 1e3);
}

struct Simulation::Impl {
  Scenario scenario;
  Topology topology;
  std::vector<PeerId> publishers;
  std::vector<bool> byzantine;
  crypto::Digest setupDigest;
  std::shared_ptr<crypto::KeyedMacScheme> scheme;
  std::vector<std::unique_ptr<SimNode>> nodes;
  std::vector<Link> links;
  std::priority_queue<Event, std::vector<Event>, LaterFirst> queue;
  std::uint64_t seq = 0;
  Rng heartbeatRng;
  Rng lossRng;
  std::vector<crypto::Digest> ids;
  std::unordered_map<crypto::Digest, std::size_t> indexOf;
  RunMetrics metrics;
  std::optional<crypto::Keccak256> trace;
  Time lastPayloadActivity{0};
  std::size_t published = 0;
  std::size_t pendingPairs = 0;  // correct-node deliveries still missing
  std::vector<std::size_t> deliveredCount;
  std::size_t quorumNeed = 0;
  bool ran = false;

  explicit Impl(const Scenario& s)
      : scenario(s),
        heartbeatRng(mix_seed(s.seed, kHeartbeatStream)),
        lossRng(mix_seed(s.seed, kLossStream)) {
    scenario.validate();
    Rng topoRng(mix_seed(s.seed, kTopologyStream));
    topology = build_topology(scenario, topoRng);

    Rng setupRng(mix_seed(s.seed, kSetupStream));
    const std::size_t top = top_bandwidth_class(scenario);
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < topology.n; ++i) {
      if (topology.bandwidthClass[i] == top) {
        candidates.push_back(i);
      }
    }
    if (candidates.empty()) {
      const std::size_t forced = uniform_below(setupRng, topology.n);
      topology.bandwidthClass[forced] = top;
      topology.upBps[forced] = scenario.bandwidthClasses[top].upBps;
      topology.downBps[forced] = scenario.bandwidthClasses[top].downBps;
      candidates.push_back(forced);
    }
    const std::size_t count = scenario.effective_publish_count();
    for (std::size_t i = 0; i < count; ++i) {
      publishers.push_back(peer(candidates[uniform_below(setupRng, candidates.size())]));
    }
    byzantine = inject_adversary(topology.n, scenario.byzantineFraction, publishers, setupRng);

    crypto::Keccak256 h;
    const crypto::Digest td = topology.digest();
    h.update(td.bytes);
    Bytes extra;
    for (const PeerId p : publishers) {
      for (int shift = 56; shift >= 0; shift -= 8) {
        extra.push_back(static_cast<std::uint8_t>(to_u64(p) >> shift));
      }
    }
    for (const bool b : byzantine) {
      extra.push_back(b ? 1 : 0);
    }
    h.update(extra);
    setupDigest = h.finish();

    build_nodes();
  }

  void build_nodes() {
    const std::size_t n = topology.n;
    const Time tHb = from_seconds(scenario.tHeartbeatMs / 1e3);
    std::vector<crypto::KeyPair> keys;
    if (scenario.protocol == Protocol::kOptimum) {
      scheme = std::make_shared<crypto::KeyedMacScheme>();
      for (std::size_t i = 0; i < n; ++i) {
        keys.push_back(crypto::KeyPair::derive(peer(i), scenario.seed));
        scheme->register_peer(keys.back());
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (scenario.protocol == Protocol::kOptimum) {
        protocol::NodeConfig cfg;
        cfg.self = peer(i);
        cfg.neighbors = topology.neighbors[i];
        cfg.mesh = topology.mesh[i];
        cfg.params.k = scenario.k;
        cfg.params.r = scenario.r;
        cfg.params.p = scenario.p;
        cfg.params.publisherShards = scenario.publisherShards;
        cfg.params.tHeartbeat = tHb;
        cfg.params.forwardCap = scenario.forwardCap;
        cfg.params.rugby = scenario.rugby;
        cfg.keys = keys[i];
        cfg.scheme = scheme;
        cfg.seed = mix_seed(scenario.seed, kNodeStream + i);
        nodes.push_back(std::make_unique<OptimumSimNode>(
            std::move(cfg), byzantine[i], scenario.pollutionProb,
            mix_seed(scenario.seed, kAdversaryStream + i)));
      } else {
        gossipsub::GossipConfig cfg;
        cfg.self = peer(i);
        cfg.neighbors = topology.neighbors[i];
        cfg.mesh = topology.mesh[i];
        cfg.tHeartbeat = tHb;
        nodes.push_back(std::make_unique<GossipSimNode>(std::move(cfg)));
      }
    }
    links.assign(n, Link{});
  }

  Bytes make_value(std::size_t i) const {
    Rng rng(mix_seed(scenario.seed, kPayloadStream + i));
    Bytes value(static_cast<std::size_t>(scenario.materialized_size()));
    for (std::size_t j = 0; j < value.size(); ++j) {
      value[j] = uniform_byte(rng);
    }
    for (std::size_t j = 0; j < std::min<std::size_t>(8, value.size()); ++j) {
      value[j] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(i) >> (56 - 8 * j));
    }
    return value;
  }

  void schedule(Event e) {
    e.seq = seq++;
    queue.push(std::move(e));
  }

  std::uint64_t logical_size(const Envelope& env) const {
    const std::uint64_t actual = protocol::wire_size(env);
    switch (env.kind) {
      case MessageKind::kShard:
      case MessageKind::kAlert: {
        const auto& s = env.kind == MessageKind::kShard ? *env.shard() : *env.alert().evidence;
        return actual - s.payload.size() + rlnc::fragment_length(scenario.messageSizeBytes, s.k());
      }
      case MessageKind::kFullMessage:
        return actual - env.full().value->size() + scenario.messageSizeBytes;
      default:
        return actual;
    }
  }

  void pump(std::size_t u, Time now) {
    Link& link = links[u];
    if (link.busy) {
      return;
    }
    std::optional<Envelope> next;
    if (!link.control.empty()) {
      next = std::move(link.control.front());
      link.control.pop_front();
    } else {
      next = nodes[u]->next_payload();
    }
    if (!next) {
      return;
    }
    Envelope env = std::move(*next);
    const std::uint64_t size = logical_size(env);
    const auto v = static_cast<std::size_t>(to_u64(env.to));
    const double bits = static_cast<double>(size) * 8.0;
    const Time upDone = now + from_seconds(bits / topology.upBps[u]);
    link.busy = true;
    schedule(Event{upDone, 0, EventKind::kUplinkReady, u, 0, 0, {}});

    NodeTraffic& t = metrics.traffic[u];
    t.bytesSent += size;
    if (env.kind == MessageKind::kShard || env.kind == MessageKind::kFullMessage) {
      ++t.payloadMessagesSent;
    } else {
      ++t.controlMessagesSent;
    }
    if (env.kind == MessageKind::kAlert) {
      ++metrics.alerts;
    }
    if (env.kind == MessageKind::kPolluted) {
      ++metrics.quarantineEvents;
    }
    if (is_payload_plane(env.kind)) {
      lastPayloadActivity = now;
    }
    if (trace) {
      Bytes stamp;
      for (int shift = 56; shift >= 0; shift -= 8) {
        stamp.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(now.count()) >> shift));
      }
      trace->update(stamp);
      trace->update(protocol::encode(env));
    }
    if (scenario.lossProb > 0 && uniform_unit(lossRng) < scenario.lossProb) {
      ++metrics.droppedByLoss;
      return;
    }
    const Time lat = from_seconds(topology.latency_ms(u, v) / 1e3);
    Link& dst = links[v];
    const Time downStart = std::max(now + lat, dst.downFree);
    const Time downEnd = downStart + from_seconds(bits / topology.downBps[v]);
    dst.downFree = downEnd;
    const Time deliverAt = std::max(downEnd, upDone + lat);
    schedule(Event{deliverAt, 0, EventKind::kDeliver, v, 0, size, std::move(env)});
  }

  void absorb(std::size_t v, NodeOutput out, Time now, std::uint64_t size) {
    for (auto& e : out.control) {
      links[v].control.push_back(std::move(e));
    }
    if (out.redundant) {
      metrics.traffic[v].redundantBytes += size;
    }
    for (const auto& m : out.delivered) {
      const auto it = indexOf.find(m);
      if (it == indexOf.end()) {
        continue;
      }
      MessageMetrics& mm = metrics.messages[it->second];
      if (mm.deliveredAt[v]) {
        continue;
      }
      mm.deliveredAt[v] = now;
      const auto value = nodes[v]->value(m);
      if (!value || crypto::hash(*value) != m) {
        ++metrics.integrityFailures;
      }
      if (!byzantine[v]) {
        --pendingPairs;
      }
      if (++deliveredCount[it->second] >= quorumNeed && !mm.quorumAt) {
        mm.quorumAt = now;
      }
    }
    pump(v, now);
  }

  RunMetrics run() {
    if (ran) {
      throw Error(ErrorCode::kBadParameters, "a Simulation runs once");
    }
    ran = true;
    const std::size_t n = topology.n;
    const Time horizon = from_seconds(scenario.horizonSeconds);
    const Time tHb = from_seconds(scenario.tHeartbeatMs / 1e3);
    const Time idleWindow = 3 * tHb;
    metrics.protocol = scenario.protocol;
    metrics.seed = scenario.seed;
    metrics.n = n;
    metrics.D = scenario.D;
    metrics.k = scenario.k;
    metrics.messageSizeBytes = scenario.messageSizeBytes;
    metrics.publishRatePerSec = scenario.publishRatePerSec;
    metrics.byzantineFraction = scenario.byzantineFraction;
    metrics.deliveryQuorum = scenario.deliveryQuorum;
    metrics.traffic.assign(n, NodeTraffic{});
    metrics.byzantine = byzantine;
    metrics.topologyDigest = setupDigest;
    if (scenario.traceDigest) {
      trace.emplace();
    }
    quorumNeed = static_cast<std::size_t>(
        std::ceil(scenario.deliveryQuorum * static_cast<double>(n) - 1e-9));
    const std::size_t correct =
        static_cast<std::size_t>(std::count(byzantine.begin(), byzantine.end(), false));

    for (std::size_t i = 0; i < publishers.size(); ++i) {
      const Time at = from_seconds(static_cast<double>(i) / scenario.publishRatePerSec);
      schedule(Event{at, 0, EventKind::kPublish, static_cast<std::size_t>(to_u64(publishers[i])),
                     i, 0, {}});
    }
    const Time half = tHb / 2;
    for (std::size_t u = 0; u < n; ++u) {
      const Time jitter(static_cast<std::int64_t>(
          uniform_below(heartbeatRng, static_cast<std::uint64_t>(half.count()) + 1)));
      schedule(Event{jitter, 0, EventKind::kHeartbeat, u, 0, 0, {}});
    }

    Time now{0};
    while (!queue.empty()) {
      if (queue.top().at > horizon) {
        now = horizon;
        break;
      }
      Event e = queue.top();
      queue.pop();
      now = e.at;
      switch (e.kind) {
        case EventKind::kPublish: {
          Bytes value = make_value(e.index);
          const crypto::Digest m = crypto::hash(value);
          ids.push_back(m);
          indexOf[m] = e.index;
          MessageMetrics mm;
          mm.index = e.index;
          mm.id = m;
          mm.publisher = peer(e.node);
          mm.publishedAt = now;
          mm.deliveredAt.assign(n, std::nullopt);
          metrics.messages.push_back(std::move(mm));
          deliveredCount.push_back(0);
          pendingPairs += correct;
          ++published;
          for (auto& node : nodes) {
            node->note_publisher(m, peer(e.node));
          }
          lastPayloadActivity = now;
          absorb(e.node, nodes[e.node]->publish(std::move(value)), now, 0);
          break;
        }
        case EventKind::kDeliver: {
          metrics.traffic[e.node].bytesReceived += e.size;
          absorb(e.node, nodes[e.node]->receive(e.env), now, e.size);
          break;
        }
        case EventKind::kUplinkReady:
          links[e.node].busy = false;
          pump(e.node, now);
          break;
        case EventKind::kHeartbeat: {
          absorb(e.node, nodes[e.node]->heartbeat(now), now, 0);
          const Time jitter(static_cast<std::int64_t>(
              uniform_below(heartbeatRng, static_cast<std::uint64_t>(tHb.count() / 10) + 1)));
          schedule(Event{now + half + jitter, 0, EventKind::kHeartbeat, e.node, 0, 0, {}});
          break;
        }
      }
      if (published == publishers.size() && pendingPairs == 0 &&
          now - lastPayloadActivity > idleWindow) {
        break;
      }
    }
    metrics.endTimeMs = to_ms(now);
    if (trace) {
      metrics.traceDigest = trace->finish();
    }
    return metrics;
  }
};

Simulation::Simulation(const Scenario& scenario) : impl_(std::make_unique<Impl>(scenario)) {}
Simulation::~Simulation() = default;

RunMetrics Simulation::run() { return impl_->run(); }
const Scenario& Simulation::scenario() const { return impl_->scenario; }
const Topology& Simulation::topology() const { return impl_->topology; }
const std::vector<PeerId>& Simulation::publishers() const { return impl_->publishers; }
const std::vector<bool>& Simulation::byzantine() const { return impl_->byzantine; }
crypto::Digest Simulation::setup_digest() const { return impl_->setupDigest; }
const std::vector<crypto::Digest>& Simulation::message_ids() const { return impl_->ids; }
Bytes Simulation::message_value(std::size_t i) const { return impl_->make_value(i); }

const protocol::OptimumNode* Simulation::optimum_node(std::size_t i) const {
  return impl_->nodes.at(i)->optimum();
}

const gossipsub::GossipsubNode* Simulation::gossip_node(std::size_t i) const {
  return impl_->nodes.at(i)->gossip();
}

RunMetrics run_scenario(const Scenario& scenario) {
  Simulation sim(scenario);
  return sim.run();
}

}  // namespace galois::netsim
