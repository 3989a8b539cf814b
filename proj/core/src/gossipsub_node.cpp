// SPDX-License-Identifier: Apache-2.0
#include "galois/gossipsub_node.hpp"

namespace galois::gossipsub {

using protocol::Envelope;
using protocol::MessageKind;

void GossipEffects::merge(GossipEffects&& other) {
  control.insert(control.end(), std::make_move_iterator(other.control.begin()),
                 std::make_move_iterator(other.control.end()));
  delivered.insert(delivered.end(), other.delivered.begin(), other.delivered.end());
  duplicate = duplicate || other.duplicate;
  invalid = invalid || other.invalid;
}

GossipsubNode::GossipsubNode(GossipConfig config)
    : config_(std::move(config)),
      neighbors_(config_.neighbors.begin(), config_.neighbors.end()),
      mesh_(config_.mesh.begin(), config_.mesh.end()) {
  if (config_.tHeartbeat <= Time::zero()) {
    throw Error(ErrorCode::kBadParameters, "tHeartbeat must be positive");
  }
  for (const PeerId m : mesh_) {
    if (neighbors_.count(m) == 0) {
      throw Error(ErrorCode::kBadParameters, "mesh peer is not a neighbor");
    }
  }
}

std::shared_ptr<const Bytes> GossipsubNode::deliver(const crypto::Digest& m) const {
  const auto it = store_.find(m);
  if (it == store_.end()) {
    throw Error(ErrorCode::kNotDecoded, "message " + m.hex() + " not received");
  }
  return it->second;
}

void GossipsubNode::accept(PeerId from, const crypto::Digest& m,
                           std::shared_ptr<const Bytes> value, GossipEffects& fx) {
  store_.emplace(m, std::move(value));
  order_.push_back(m);
  fx.delivered.push_back(m);
  for (const PeerId v : mesh_) {
    if (v != from) {
      fx.control.push_back(protocol::make_control(MessageKind::kIDontWant, config_.self, v, m));
    }
  }
  const auto& skip = dontWant_[m];
  for (const PeerId v : mesh_) {
    if (v != from && skip.count(v) == 0) {
      outbox_.push_back(Queued{v, m, false});
    }
  }
}

GossipEffects GossipsubNode::b_publish(Bytes value) {
  GossipEffects fx;
  const crypto::Digest m = crypto::hash(value);
  if (store_.count(m) != 0) {
    return fx;
  }
  accept(config_.self, m, std::make_shared<const Bytes>(std::move(value)), fx);
  // The publisher has nothing to suppress yet; IDONTWANT is for relays.
  fx.control.clear();
  return fx;
}

GossipEffects GossipsubNode::b_receive(PeerId from, const crypto::Digest& m,
                                       std::shared_ptr<const Bytes> value) {
  GossipEffects fx;
  ++counters_.received;
  knownHave_[m].insert(from);
  if (store_.count(m) != 0) {
    ++counters_.duplicates;
    fx.duplicate = true;
    return fx;
  }
  if (!value || crypto::hash(*value) != m) {
    ++counters_.invalid;
    fx.invalid = true;
    return fx;
  }
  accept(from, m, std::move(value), fx);
  return fx;
}

GossipEffects GossipsubNode::b_heartbeat(Time now) {
  GossipEffects fx;
  if (now - lastHeartbeat_ <= config_.tHeartbeat) {
    return fx;
  }
  lastHeartbeat_ = now;
  ++epoch_;
  for (const auto& m : order_) {
    const auto& known = knownHave_[m];
    for (const PeerId v : neighbors_) {
      if (mesh_.count(v) == 0 && known.count(v) == 0) {
        fx.control.push_back(protocol::make_control(MessageKind::kIHave, config_.self, v, m));
      }
    }
  }
  return fx;
}

GossipEffects GossipsubNode::b_receive_ihave(PeerId from, const crypto::Digest& m) {
  GossipEffects fx;
  knownHave_[m].insert(from);
  if (store_.count(m) != 0) {
    return fx;
  }
  const auto it = iwantEpoch_.find(m);
  if (it != iwantEpoch_.end() && it->second == epoch_) {
    return fx;
  }
  iwantEpoch_[m] = epoch_;
  fx.control.push_back(protocol::make_control(MessageKind::kIWant, config_.self, from, m));
  return fx;
}

GossipEffects GossipsubNode::b_receive_iwant(PeerId from, const crypto::Digest& m) {
  if (store_.count(m) != 0) {
    outbox_.push_back(Queued{from, m, true});
  }
  return {};
}

GossipEffects GossipsubNode::b_receive_idontwant(PeerId from, const crypto::Digest& m) {
  dontWant_[m].insert(from);
  knownHave_[m].insert(from);
  return {};
}

GossipEffects GossipsubNode::on_publish(Bytes value) { return b_publish(std::move(value)); }

GossipEffects GossipsubNode::on_envelope(const Envelope& env) {
  switch (env.kind) {
    case MessageKind::kFullMessage:
      return b_receive(env.from, env.msgId, env.full().value);
    case MessageKind::kIHave:
      return b_receive_ihave(env.from, env.msgId);
    case MessageKind::kIWant:
      return b_receive_iwant(env.from, env.msgId);
    case MessageKind::kIDontWant:
      return b_receive_idontwant(env.from, env.msgId);
    default:
      return {};
  }
}

GossipEffects GossipsubNode::on_heartbeat(Time now) { return b_heartbeat(now); }

bool GossipsubNode::suppressed(const Queued& q) const {
  if (q.requested) {
    return false;
  }
  const auto it = dontWant_.find(q.m);
  return it != dontWant_.end() && it->second.count(q.to) != 0;
}

std::optional<Envelope> GossipsubNode::next_message() {
  while (!outbox_.empty()) {
    const Queued q = outbox_.front();
    outbox_.pop_front();
    if (suppressed(q)) {
      ++counters_.suppressed;
      continue;
    }
    return protocol::make_full(config_.self, q.to, q.m, store_.at(q.m));
  }
  return std::nullopt;
}

bool GossipsubNode::has_sendable_message() const {
  for (const auto& q : outbox_) {
    if (!suppressed(q)) {
      return true;
    }
  }
  return false;
}

}  // namespace galois::gossipsub
