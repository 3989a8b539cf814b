// SPDX-License-Identifier: Apache-2.0
//
// Simplified full-message gossip baseline over a static mesh: push FULLMSG
// along the mesh, suppress with IDONTWANT, repair with IHAVE/IWANT gossip to
// non-mesh neighbors.
#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "galois/common.hpp"
#include "galois/envelope.hpp"
#include "galois/keccak.hpp"

namespace galois::gossipsub {

using namespace std::chrono_literals;

struct GossipConfig {
  PeerId self{};
  std::vector<PeerId> neighbors;
  std::vector<PeerId> mesh;
  Time tHeartbeat = 1s;
};

struct GossipEffects {
  std::vector<protocol::Envelope> control;
  std::vector<crypto::Digest> delivered;
  bool duplicate = false;
  bool invalid = false;

  void merge(GossipEffects&& other);
};

struct GossipCounters {
  std::uint64_t received = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t invalid = 0;
  std::uint64_t suppressed = 0;  // queued FULLMSG dropped after IDONTWANT
};

class GossipsubNode {
 public:
  explicit GossipsubNode(GossipConfig config);

  PeerId id() const noexcept { return config_.self; }

  GossipEffects on_publish(Bytes value);
  GossipEffects on_envelope(const protocol::Envelope& env);
  GossipEffects on_heartbeat(Time now);

  /// Next FULLMSG in FIFO order, skipping peers that sent IDONTWANT.
  std::optional<protocol::Envelope> next_message();
  bool has_sendable_message() const;

  bool has(const crypto::Digest& m) const { return store_.count(m) != 0; }
  /// Throws Error(kNotDecoded) for unknown ids.
  std::shared_ptr<const Bytes> deliver(const crypto::Digest& m) const;
  const GossipCounters& counters() const noexcept { return counters_; }

  GossipEffects b_publish(Bytes value);
  GossipEffects b_receive(PeerId from, const crypto::Digest& m, std::shared_ptr<const Bytes> value);
  GossipEffects b_heartbeat(Time now);
  GossipEffects b_receive_ihave(PeerId from, const crypto::Digest& m);
  GossipEffects b_receive_iwant(PeerId from, const crypto::Digest& m);
  GossipEffects b_receive_idontwant(PeerId from, const crypto::Digest& m);

 private:
  struct Queued {
    PeerId to{};
    crypto::Digest m;
    bool requested = false;  // IWANT replies ignore IDONTWANT
  };

  void accept(PeerId from, const crypto::Digest& m, std::shared_ptr<const Bytes> value,
              GossipEffects& fx);
  bool suppressed(const Queued& q) const;

  GossipConfig config_;
  std::set<PeerId> neighbors_;
  std::set<PeerId> mesh_;
  Time lastHeartbeat_{0};
  std::uint64_t epoch_ = 0;

  std::unordered_map<crypto::Digest, std::shared_ptr<const Bytes>> store_;
  std::vector<crypto::Digest> order_;
  std::unordered_map<crypto::Digest, std::set<PeerId>> dontWant_;
  std::unordered_map<crypto::Digest, std::set<PeerId>> knownHave_;
  std::unordered_map<crypto::Digest, std::uint64_t> iwantEpoch_;
  std::deque<Queued> outbox_;
  GossipCounters counters_;
};

}  // namespace galois::gossipsub
