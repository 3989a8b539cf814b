// SPDX-License-Identifier: Apache-2.0
//
// Zero-latency, infinitely fast network of coded-gossip nodes for protocol
// tests. Every envelope goes through one global FIFO, so every link is FIFO.
// Shards are pulled one per node per round and the queue drains between
// rounds, so IDONTWANT suppression of queued shards is exercised.
#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "galois/optimum_node.hpp"
#include "galois/random.hpp"
#include "galois/signature.hpp"

namespace galois::testing {

using protocol::Effects;
using protocol::Envelope;
using protocol::MessageKind;
using protocol::OptimumNode;

struct Graph {
  std::vector<std::vector<PeerId>> neighbors;
  std::vector<std::vector<PeerId>> mesh;

  explicit Graph(std::size_t n) : neighbors(n), mesh(n) {}

  void link(std::size_t a, std::size_t b, bool inMesh = true) {
    neighbors[a].push_back(peer(b));
    neighbors[b].push_back(peer(a));
    if (inMesh) {
      mesh[a].push_back(peer(b));
      mesh[b].push_back(peer(a));
    }
  }

  static Graph line(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.link(i, i + 1);
    return g;
  }

  /// Ring plus seeded chords; every node ends with degree >= 2.
  static Graph random(std::size_t n, std::size_t chords, Rng& rng) {
    Graph g(n);
    std::set<std::pair<std::size_t, std::size_t>> used;
    const auto add = [&](std::size_t a, std::size_t b) {
      if (a == b) return;
      if (a > b) std::swap(a, b);
      if (used.emplace(a, b).second) g.link(a, b);
    };
    for (std::size_t i = 0; i < n; ++i) add(i, (i + 1) % n);
    for (std::size_t c = 0; c < chords; ++c) {
      add(uniform_below(rng, n), uniform_below(rng, n));
    }
    return g;
  }
};

inline crypto::KeyPair keys_for(std::size_t i) { return crypto::KeyPair::derive(peer(i), 99); }

inline std::shared_ptr<crypto::KeyedMacScheme> scheme_for(std::size_t n) {
  auto scheme = std::make_shared<crypto::KeyedMacScheme>();
  for (std::size_t i = 0; i < n; ++i) scheme->register_peer(keys_for(i));
  return scheme;
}

/// A shard over `value` signed as if `creator` had produced it.
inline rlnc::ShardPtr signed_shard(ByteView value, std::size_t k, std::size_t creator,
                                   const crypto::SignatureScheme& scheme, Rng& rng,
                                   bool corrupt = false) {
  std::vector<rlnc::Shard> all = rlnc::encode(value, k, k, rng);
  std::vector<const rlnc::Shard*> inputs;
  for (const auto& x : all) inputs.push_back(&x);
  rlnc::Shard s = rlnc::recode(inputs, rng);
  if (corrupt) {
    s.payload[uniform_below(rng, s.payload.size())] ^= 0x5A;
  }
  s.creator = peer(creator);
  rlnc::sign(s, keys_for(creator), scheme);
  return std::make_shared<const rlnc::Shard>(std::move(s));
}

inline Bytes random_value(std::size_t size, Rng& rng) {
  Bytes v(size);
  for (auto& b : v) b = uniform_byte(rng);
  return v;
}

class Network {
 public:
  Network(const Graph& graph, protocol::ProtocolParams params, std::uint64_t seed = 1,
          std::set<std::size_t> polluters = {})
      : scheme_(scheme_for(graph.neighbors.size())), polluters_(std::move(polluters)),
        rng_(mix_seed(seed, 77)) {
    for (std::size_t i = 0; i < graph.neighbors.size(); ++i) {
      protocol::NodeConfig cfg;
      cfg.self = peer(i);
      cfg.neighbors = graph.neighbors[i];
      cfg.mesh = graph.mesh[i];
      cfg.params = params;
      cfg.keys = keys_for(i);
      cfg.scheme = scheme_;
      cfg.seed = mix_seed(seed, i);
      cfg.honorDone = polluters_.count(i) == 0;
      nodes_.push_back(std::make_unique<OptimumNode>(std::move(cfg)));
    }
  }

  OptimumNode& node(std::size_t i) { return *nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  const crypto::KeyedMacScheme& scheme() const { return *scheme_; }

  crypto::Digest publish(std::size_t i, Bytes value) {
    const crypto::Digest m = crypto::hash(value);
    for (auto& n : nodes_) n->note_publisher(m, peer(i));
    absorb(nodes_[i]->on_publish(std::move(value)));
    return m;
  }

  void heartbeat(Time now) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) absorb(nodes_[i]->on_heartbeat(now));
  }

  /// Delivers until nothing is in flight and no node has a sendable shard.
  /// Returns the number of shard envelopes delivered.
  std::size_t settle(std::size_t maxShards = 1'000'000) {
    std::size_t shards = 0;
    for (;;) {
      drain_control();
      bool moved = false;
      for (std::size_t i = 0; i < nodes_.size() && shards < maxShards; ++i) {
        auto out = nodes_[i]->next_shard();
        if (!out) continue;
        moved = true;
        ++shards;
        rlnc::ShardPtr shard = out->shard;
        if (polluters_.count(i) != 0) shard = pollute(i, *shard);
        const std::size_t to = static_cast<std::size_t>(to_u64(out->to));
        const bool honest = polluters_.count(i) == 0;
        if (!out->proof && honest && doneSeen_.count({to, i, shard->msgId}) != 0) ++lateShards;
        ++shardsOn[{i, to}];
        queue_.push_back(protocol::make_shard(peer(i), out->to, shard));
      }
      if (!moved) break;
    }
    drain_control();
    return shards;
  }

  std::size_t delivery_count(std::size_t i, const crypto::Digest& m) const {
    const auto it = deliveryCounts_.find({i, m});
    return it == deliveryCounts_.end() ? 0 : it->second;
  }

  /// Non-proof shards sent on a link after the sender had processed the
  /// receiver's IDONTWANT.
  std::size_t lateShards = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> shardsOn;
  std::vector<Envelope> controlLog;

 private:
  rlnc::ShardPtr pollute(std::size_t i, const rlnc::Shard& honest) {
    rlnc::Shard bad = honest;
    bad.payload[uniform_below(rng_, bad.payload.size())] ^=
        static_cast<std::uint8_t>(1 + uniform_below(rng_, 255));
    rlnc::sign(bad, keys_for(i), *scheme_);
    return std::make_shared<const rlnc::Shard>(std::move(bad));
  }

  void absorb(Effects fx) {
    for (auto& env : fx.control) {
      // A polluter never raises its hand.
      const bool fromPolluter = polluters_.count(static_cast<std::size_t>(to_u64(env.from))) != 0;
      if (env.kind == MessageKind::kPolluted && fromPolluter) continue;
      queue_.push_back(std::move(env));
    }
  }

  void deliver(const Envelope& env) {
    const std::size_t to = static_cast<std::size_t>(to_u64(env.to));
    const std::size_t from = static_cast<std::size_t>(to_u64(env.from));
    if (env.kind == MessageKind::kIDontWant) doneSeen_.insert({from, to, env.msgId});
    if (env.kind != MessageKind::kShard) controlLog.push_back(env);
    Effects fx = nodes_[to]->on_envelope(env);
    for (const auto& m : fx.delivered) ++deliveryCounts_[{to, m}];
    absorb(std::move(fx));
  }

  void drain_control() {
    while (!queue_.empty()) {
      Envelope env = std::move(queue_.front());
      queue_.pop_front();
      deliver(env);
    }
  }

  std::shared_ptr<crypto::KeyedMacScheme> scheme_;
  std::set<std::size_t> polluters_;
  Rng rng_;
  std::vector<std::unique_ptr<OptimumNode>> nodes_;
  std::deque<Envelope> queue_;
  // (a, b, m): a has sent IDONTWANT for m to b and b has processed it.
  std::set<std::tuple<std::size_t, std::size_t, crypto::Digest>> doneSeen_;
  std::map<std::pair<std::size_t, crypto::Digest>, std::size_t> deliveryCounts_;
};

}  // namespace galois::testing
