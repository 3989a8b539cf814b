// SPDX-License-Identifier: Apache-2.0
//
// The coded-gossip node: a deterministic transition system. Inputs are
// publish requests, received envelopes and heartbeats; outputs are control
// envelopes (returned in Effects) and shards, which the transport pulls one at
// a time with next_shard() so that IDONTWANT notices received in the meantime
// still suppress queued sends.
#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "galois/common.hpp"
#include "galois/envelope.hpp"
#include "galois/keccak.hpp"
#include "galois/random.hpp"
#include "galois/rlnc.hpp"
#include "galois/signature.hpp"

namespace galois::protocol {

using namespace std::chrono_literals;

enum class PublisherShards {
  kMultiplier,  // n = k * p
  kMeshDegree,  // n = k * |mesh|
};

struct ProtocolParams {
  std::size_t k = 8;
  /// Forward once |shardSet| * k > r. 0 selects r = k.
  std::size_t r = 0;
  /// Published shard multiplier. 0 selects |neighbors|.
  std::size_t p = 0;
  PublisherShards publisherShards = PublisherShards::kMultiplier;
  Time tHeartbeat = 1s;
  /// Recode-and-forward events per message per node. 0 selects 3k.
  std::size_t forwardCap = 0;
  bool rugby = true;
  /// Candidate bases tried per trigger while polluted.
  std::size_t recoveryAttempts = 16;
  /// Verified shards kept outside shardSet per message. 0 selects 8k.
  std::size_t spareLimit = 0;

  std::size_t effective_r() const noexcept { return r == 0 ? k : r; }
  std::size_t effective_forward_cap() const noexcept { return forwardCap == 0 ? 3 * k : forwardCap; }
  std::size_t effective_spare_limit() const noexcept { return spareLimit == 0 ? 8 * k : spareLimit; }
  /// Throws Error(kBadParameters).
  void validate() const;
};

struct NodeConfig {
  PeerId self{};
  std::vector<PeerId> neighbors;
  std::vector<PeerId> mesh;  // subset of neighbors
  ProtocolParams params;
  crypto::KeyPair keys;
  std::shared_ptr<const crypto::SignatureScheme> scheme;
  std::uint64_t seed = 0;
  /// Byzantine nodes set this false and keep sending to peers that are done.
  bool honorDone = true;
};

struct OutgoingShard {
  PeerId to{};
  rlnc::ShardPtr shard;
  /// Proves a recovered node is clean; bypasses the done/publisher guards.
  bool proof = false;
};

struct Effects {
  std::vector<Envelope> control;
  std::vector<crypto::Digest> delivered;
  /// The handled shard did not enter shardSet.
  bool redundant = false;
  /// The handled shard failed signature or provenance checks.
  bool invalid = false;

  void merge(Effects&& other);
};

struct HeldShard {
  PeerId from{};
  rlnc::ShardPtr shard;
  std::uint64_t seq = 0;
};

struct DecodedMessage {
  std::shared_ptr<const Bytes> value;
  /// k independent shards that decode to value.
  std::vector<rlnc::ShardPtr> basis;
  std::vector<Bytes> fragments;
};

enum class AccusationSource { kDirect, kAlert };

struct AccusationEvent {
  crypto::Digest msgId;
  PeerId accused{};
  AccusationSource source = AccusationSource::kDirect;
};

struct MessageState {
  explicit MessageState(const crypto::Digest& m, std::size_t k) : id(m), tracker(k) {}

  crypto::Digest id;
  std::optional<PeerId> publisher;
  std::vector<HeldShard> shardSet;
  rlnc::RankTracker tracker;
  std::optional<DecodedMessage> decoded;
  std::set<PeerId> isDone;
  std::set<PeerId> doneSent;
  std::optional<PeerId> iWant;
  std::size_t forwarded = 0;

  std::vector<HeldShard> spare;
  std::vector<HeldShard> malShards;
  std::set<PeerId> malPeers;
  std::set<PeerId> quaPeers;
  std::vector<HeldShard> quaShards;
  bool isPolluted = false;
  bool everPolluted = false;
  std::set<PeerId> pollutedSent;
  std::set<PeerId> rejoinTargets;
  std::set<PeerId> selfReported;
  std::map<PeerId, HeldShard> pendingAccusations;
  std::vector<std::pair<PeerId, AlertBody>> deferredAlerts;
  std::set<std::pair<PeerId, PeerId>> alertsSent;
  std::set<std::vector<std::uint64_t>> triedBases;
};

struct NodeCounters {
  std::uint64_t shardsReceived = 0;
  std::uint64_t redundantShards = 0;
  std::uint64_t invalidShards = 0;
  std::uint64_t shardsDropped = 0;  // queued but suppressed by isDone
  std::uint64_t recodes = 0;
  std::uint64_t decodeFailures = 0;
  std::uint64_t recoveries = 0;
  std::uint64_t alertsReceived = 0;
  std::uint64_t bogusAlerts = 0;
  std::uint64_t alertsDeferred = 0;
  std::uint64_t quarantineAdmissions = 0;
};

class OptimumNode {
 public:
  explicit OptimumNode(NodeConfig config);

  PeerId id() const noexcept { return config_.self; }
  const NodeConfig& config() const noexcept { return config_; }
  const ProtocolParams& params() const noexcept { return config_.params; }

  // Composite inputs: each runs the transition, then every internal action it
  // enabled, and returns everything emitted.
  Effects on_publish(Bytes value);
  Effects on_envelope(const Envelope& env);
  Effects on_heartbeat(Time now);

  /// Next sendable shard in FIFO order; entries for done peers are dropped and
  /// entries for polluted messages stay frozen in place.
  std::optional<OutgoingShard> next_shard();
  bool has_sendable_shard() const;
  std::size_t send_buffer_size() const noexcept { return sendBuffer_.size(); }

  /// Simulation-scope knowledge of who published m; shards are never sent back.
  void note_publisher(const crypto::Digest& m, PeerId publisher);

  /// Throws Error(kNotDecoded) before m is decoded.
  std::pair<crypto::Digest, std::shared_ptr<const Bytes>> deliver(const crypto::Digest& m) const;

  const MessageState* message(const crypto::Digest& m) const;
  std::vector<crypto::Digest> messages() const { return order_; }
  const NodeCounters& counters() const noexcept { return counters_; }
  const std::vector<AccusationEvent>& accusations() const noexcept { return accusations_; }
  bool is_mesh(PeerId p) const { return mesh_.count(p) != 0; }

  // Individual transitions.
  Effects publish(Bytes value);
  Effects generate_shards();
  Effects receive_shard(PeerId from, const rlnc::ShardPtr& shard);
  Effects decode_msg(const crypto::Digest& m);
  Effects send_done();
  Effects receive_done(PeerId from, const crypto::Digest& m);
  Effects heartbeat(Time now);
  Effects receive_ihave(PeerId from, const crypto::Digest& m);
  Effects send_iwant();
  Effects receive_iwant(PeerId from, const crypto::Digest& m);

  Effects pollution_discovery(const crypto::Digest& m);
  Effects self_isolate(const crypto::Digest& m);
  Effects send_polluted();
  Effects receive_polluted(PeerId from, const crypto::Digest& m);
  Effects send_alert();
  Effects receive_alert(PeerId from, const crypto::Digest& m, const AlertBody& alert);
  Effects check_shards(const crypto::Digest& m);

  /// Fires enabled internal and output actions until none remain.
  Effects run_enabled();

 private:
  struct Queued {
    PeerId to{};
    crypto::Digest m;
    rlnc::ShardPtr shard;
    bool proof = false;
  };

  MessageState& state(const crypto::Digest& m);
  MessageState* find(const crypto::Digest& m);
  const MessageState* find(const crypto::Digest& m) const;
  void touch(const crypto::Digest& m);

  bool verified(PeerId from, const rlnc::Shard& shard) const;
  rlnc::ShardPtr sign_new(rlnc::Shard shard) const;
  void enqueue(PeerId to, const crypto::Digest& m, rlnc::ShardPtr shard, bool proof = false);
  void forward(MessageState& st, PeerId from);
  void keep_spare(MessageState& st, HeldShard held);
  void mark_decoded(MessageState& st, std::shared_ptr<const Bytes> value,
                    std::vector<rlnc::ShardPtr> basis, Effects& fx);

  void emit_done(MessageState& st, Effects& fx);
  void emit_iwant(MessageState& st, Effects& fx);

  // Pollution handling (rugby.cpp).
  void emit_polluted(MessageState& st, Effects& fx);
  void emit_alerts(MessageState& st, Effects& fx);
  void audit_after_decode(MessageState& st, const HeldShard& held);
  void direct_evidence(MessageState& st, const HeldShard& held);
  void accuse(MessageState& st, PeerId accused, AccusationSource source);
  void evaluate_alert(MessageState& st, const AlertBody& alert);
  bool try_recover(MessageState& st, Effects& fx);
  bool holds_polluted(const MessageState& st, const Bytes& value) const;
  void after_recovery(MessageState& st);
  void settle_pending(MessageState& st, PeerId peer);
  void process_deferred_alerts(MessageState& st);

  NodeConfig config_;
  std::set<PeerId> neighbors_;
  std::set<PeerId> mesh_;
  Rng rng_;
  std::uint64_t nextSeq_ = 0;
  Time lastHeartbeat_{0};

  std::vector<std::pair<crypto::Digest, std::shared_ptr<const Bytes>>> msgBuffer_;
  std::deque<Queued> sendBuffer_;
  std::unordered_map<crypto::Digest, MessageState> messages_;
  std::vector<crypto::Digest> order_;
  std::vector<crypto::Digest> dirty_;
  NodeCounters counters_;
  std::vector<AccusationEvent> accusations_;
};

}  // namespace galois::protocol
