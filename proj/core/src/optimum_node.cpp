// SPDX-License-Identifier: Apache-2.0
#include "galois/optimum_node.hpp"

#include <algorithm>

#include "galois/rugby.hpp"

namespace galois::protocol {

void ProtocolParams::validate() const {
  if (k == 0 || k > 0xFFFF) {
    throw Error(ErrorCode::kBadParameters, "k must be in [1, 65535]");
  }
  if (tHeartbeat <= Time::zero()) {
    throw Error(ErrorCode::kBadParameters, "tHeartbeat must be positive");
  }
}

void Effects::merge(Effects&& other) {
  control.insert(control.end(), std::make_move_iterator(other.control.begin()),
                 std::make_move_iterator(other.control.end()));
  delivered.insert(delivered.end(), other.delivered.begin(), other.delivered.end());
  redundant = redundant || other.redundant;
  invalid = invalid || other.invalid;
}

OptimumNode::OptimumNode(NodeConfig config)
    : config_(std::move(config)),
      neighbors_(config_.neighbors.begin(), config_.neighbors.end()),
      mesh_(config_.mesh.begin(), config_.mesh.end()),
      rng_(config_.seed) {
  config_.params.validate();
  if (!config_.scheme) {
    throw Error(ErrorCode::kBadParameters, "node needs a signature scheme");
  }
  for (const PeerId m : mesh_) {
    if (neighbors_.count(m) == 0) {
      throw Error(ErrorCode::kBadParameters, "mesh peer is not a neighbor");
    }
  }
  neighbors_.erase(config_.self);
  mesh_.erase(config_.self);
}

MessageState& OptimumNode::state(const crypto::Digest& m) {
  auto it = messages_.find(m);
  if (it == messages_.end()) {
    it = messages_.emplace(m, MessageState(m, config_.params.k)).first;
    order_.push_back(m);
  }
  return it->second;
}

MessageState* OptimumNode::find(const crypto::Digest& m) {
  const auto it = messages_.find(m);
  return it == messages_.end() ? nullptr : &it->second;
}

const MessageState* OptimumNode::find(const crypto::Digest& m) const {
  const auto it = messages_.find(m);
  return it == messages_.end() ? nullptr : &it->second;
}

const MessageState* OptimumNode::message(const crypto::Digest& m) const { return find(m); }

void OptimumNode::touch(const crypto::Digest& m) {
  if (std::find(dirty_.begin(), dirty_.end(), m) == dirty_.end()) {
    dirty_.push_back(m);
  }
}

void OptimumNode::note_publisher(const crypto::Digest& m, PeerId publisher) {
  state(m).publisher = publisher;
}

bool OptimumNode::verified(PeerId from, const rlnc::Shard& shard) const {
  if (shard.creator != from || shard.k() != config_.params.k ||
      shard.payload.size() != rlnc::fragment_length(shard.originalLength, shard.k())) {
    return false;
  }
  try {
    return rlnc::verify(shard, *config_.scheme);
  } catch (const Error&) {
    return false;
  }
}

rlnc::ShardPtr OptimumNode::sign_new(rlnc::Shard shard) const {
  rlnc::sign(shard, config_.keys, *config_.scheme);
  return std::make_shared<const rlnc::Shard>(std::move(shard));
}

void OptimumNode::enqueue(PeerId to, const crypto::Digest& m, rlnc::ShardPtr shard, bool proof) {
  sendBuffer_.push_back(Queued{to, m, std::move(shard), proof});
}

std::pair<crypto::Digest, std::shared_ptr<const Bytes>> OptimumNode::deliver(
    const crypto::Digest& m) const {
  const MessageState* st = find(m);
  if (st == nullptr || !st->decoded) {
    throw Error(ErrorCode::kNotDecoded, "message " + m.hex() + " is not decoded");
  }
  return {m, st->decoded->value};
}

Effects OptimumNode::publish(Bytes value) {
  const crypto::Digest m = crypto::hash(value);
  const MessageState* st = find(m);
  const bool pending = std::any_of(msgBuffer_.begin(), msgBuffer_.end(),
                                   [&](const auto& entry) { return entry.first == m; });
  if (!pending && (st == nullptr || !st->decoded)) {
    msgBuffer_.emplace_back(m, std::make_shared<const Bytes>(std::move(value)));
  }
  return {};
}

Effects OptimumNode::generate_shards() {
  Effects fx;
  const std::size_t k = config_.params.k;
  const std::vector<PeerId> destinations(neighbors_.begin(), neighbors_.end());
  for (auto& [m, value] : msgBuffer_) {
    MessageState& st = state(m);
    if (st.decoded) {
      continue;
    }
    std::size_t n = 0;
    if (config_.params.publisherShards == PublisherShards::kMeshDegree) {
      n = k * mesh_.size();
    } else {
      n = k * (config_.params.p == 0 ? neighbors_.size() : config_.params.p);
    }
    if (destinations.empty()) {
      n = 0;
    }
    std::vector<rlnc::Shard> coded = rlnc::encode(*value, k, std::max(n, k), rng_);
    std::vector<rlnc::ShardPtr> signed_shards;
    signed_shards.reserve(coded.size());
    for (auto& s : coded) {
      signed_shards.push_back(sign_new(std::move(s)));
    }
    rlnc::RankTracker tracker(k);
    std::vector<rlnc::ShardPtr> basis;
    for (const auto& s : signed_shards) {
      if (tracker.add(s->coeffs)) {
        basis.push_back(s);
      }
    }
    while (!tracker.full()) {
      auto extra = rlnc::encode(*value, k, 1, rng_);
      if (tracker.add(extra.front().coeffs)) {
        basis.push_back(sign_new(std::move(extra.front())));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      enqueue(destinations[i % destinations.size()], m, signed_shards[i]);
    }
    st.publisher = config_.self;
    mark_decoded(st, value, std::move(basis), fx);
  }
  msgBuffer_.clear();
  return fx;
}

void OptimumNode::mark_decoded(MessageState& st, std::shared_ptr<const Bytes> value,
                               std::vector<rlnc::ShardPtr> basis, Effects& fx) {
  DecodedMessage decoded;
  decoded.fragments = rlnc::fragment(*value, config_.params.k);
  decoded.value = std::move(value);
  decoded.basis = std::move(basis);
  st.decoded = std::move(decoded);
  st.isPolluted = false;
  fx.delivered.push_back(st.id);
  touch(st.id);
  if (config_.params.rugby) {
    pollution_discovery(st.id);
    process_deferred_alerts(st);
  }
  st.spare.clear();
  st.spare.shrink_to_fit();
}

std::optional<OutgoingShard> OptimumNode::next_shard() {
  for (std::size_t i = 0; i < sendBuffer_.size();) {
    const Queued& q = sendBuffer_[i];
    const MessageState* st = find(q.m);
    const bool done = config_.honorDone && st->isDone.count(q.to) != 0;
    const bool toPublisher = st->publisher && *st->publisher == q.to;
    if (!q.proof && (done || toPublisher)) {
      ++counters_.shardsDropped;
      sendBuffer_.erase(sendBuffer_.begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    if (st->isPolluted && !q.proof) {
      ++i;
      continue;
    }
    OutgoingShard out{q.to, q.shard, q.proof};
    sendBuffer_.erase(sendBuffer_.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
  }
  return std::nullopt;
}

bool OptimumNode::has_sendable_shard() const {
  return std::any_of(sendBuffer_.begin(), sendBuffer_.end(), [&](const Queued& q) {
    const MessageState* st = find(q.m);
    if (q.proof) {
      return true;
    }
    const bool done = config_.honorDone && st->isDone.count(q.to) != 0;
    const bool toPublisher = st->publisher && *st->publisher == q.to;
    return !done && !toPublisher && !st->isPolluted;
  });
}

Effects OptimumNode::receive_shard(PeerId from, const rlnc::ShardPtr& shard) {
  Effects fx;
  ++counters_.shardsReceived;
  MessageState& st = state(shard->msgId);
  touch(st.id);
  const bool rugby = config_.params.rugby;
  if ((!rugby && st.decoded) || (rugby && st.malPeers.count(from) != 0)) {
    ++counters_.redundantShards;
    fx.redundant = true;
    return fx;
  }
  if (!verified(from, *shard)) {
    ++counters_.invalidShards;
    fx.invalid = true;
    fx.redundant = true;
    return fx;
  }
  HeldShard held{from, shard, nextSeq_++};
  if (rugby && st.quaPeers.count(from) != 0) {
    st.quaShards.push_back(std::move(held));
    ++counters_.redundantShards;
    fx.redundant = true;
    if (!st.decoded) {
      try_recover(st, fx);
    }
    return fx;
  }
  if (st.decoded) {
    audit_after_decode(st, held);
    ++counters_.redundantShards;
    fx.redundant = true;
    return fx;
  }
  if (!st.tracker.is_innovative(shard->coeffs)) {
    ++counters_.redundantShards;
    fx.redundant = true;
    if (rugby) {
      keep_spare(st, std::move(held));
      if (st.isPolluted) {
        try_recover(st, fx);
      }
    }
    return fx;
  }
  st.tracker.add(shard->coeffs);
  st.shardSet.push_back(std::move(held));
  if (st.shardSet.size() * config_.params.k > config_.params.effective_r() && !st.isPolluted) {
    forward(st, from);
  }
  if (st.tracker.full()) {
    fx.merge(decode_msg(st.id));
  }
  return fx;
}

void OptimumNode::keep_spare(MessageState& st, HeldShard held) {
  st.spare.push_back(std::move(held));
  const std::size_t limit = config_.params.effective_spare_limit();
  if (st.spare.size() > limit) {
    st.spare.erase(st.spare.begin(),
                   st.spare.begin() + static_cast<std::ptrdiff_t>(st.spare.size() - limit));
  }
}

void OptimumNode::forward(MessageState& st, PeerId from) {
  if (st.forwarded >= config_.params.effective_forward_cap()) {
    return;
  }
  std::vector<const rlnc::Shard*> inputs;
  inputs.reserve(st.shardSet.size());
  for (const auto& h : st.shardSet) {
    inputs.push_back(h.shard.get());
  }
  const rlnc::ShardPtr out = sign_new(rlnc::recode(inputs, rng_));
  ++st.forwarded;
  ++counters_.recodes;
  for (const PeerId v : mesh_) {
    if (v != from) {
      enqueue(v, st.id, out);
    }
  }
}

Effects OptimumNode::decode_msg(const crypto::Digest& m) {
  Effects fx;
  MessageState* st = find(m);
  if (st == nullptr || st->decoded || !st->tracker.full()) {
    return fx;
  }
  std::vector<rlnc::ShardPtr> basis;
  basis.reserve(st->shardSet.size());
  for (const auto& h : st->shardSet) {
    basis.push_back(h.shard);
  }
  auto value = std::make_shared<const Bytes>(
      rlnc::decode(basis, config_.params.k, basis.front()->originalLength));
  if (crypto::hash(*value) == m) {
    mark_decoded(*st, std::move(value), std::move(basis), fx);
    return fx;
  }
  ++counters_.decodeFailures;
  if (config_.params.rugby) {
    fx.merge(self_isolate(m));
  }
  return fx;
}

void OptimumNode::emit_done(MessageState& st, Effects& fx) {
  if (!st.decoded) {
    return;
  }
  for (const PeerId v : mesh_) {
    if (st.doneSent.insert(v).second) {
      fx.control.push_back(make_control(MessageKind::kIDontWant, config_.self, v, st.id));
    }
  }
}

Effects OptimumNode::send_done() {
  Effects fx;
  for (const auto& m : order_) {
    emit_done(messages_.at(m), fx);
  }
  return fx;
}

Effects OptimumNode::receive_done(PeerId from, const crypto::Digest& m) {
  MessageState& st = state(m);
  touch(m);
  if (config_.honorDone) {
    st.isDone.insert(from);
  }
  if (config_.params.rugby) {
    settle_pending(st, from);
  }
  return {};
}

Effects OptimumNode::heartbeat(Time now) {
  Effects fx;
  if (now - lastHeartbeat_ <= config_.params.tHeartbeat) {
    return fx;
  }
  for (const auto& m : order_) {
    const MessageState& st = messages_.at(m);
    if (!st.decoded) {
      continue;
    }
    for (const PeerId v : neighbors_) {
      if (st.isDone.count(v) == 0) {
        fx.control.push_back(make_control(MessageKind::kIHave, config_.self, v, m));
      }
    }
  }
  lastHeartbeat_ = now;
  return fx;
}

Effects OptimumNode::receive_ihave(PeerId from, const crypto::Digest& m) {
  MessageState& st = state(m);
  touch(m);
  if (config_.honorDone) {
    st.isDone.insert(from);
  }
  if (config_.params.rugby) {
    settle_pending(st, from);
  }
  if (!st.decoded) {
    st.iWant = from;
  }
  return {};
}

void OptimumNode::emit_iwant(MessageState& st, Effects& fx) {
  if (st.iWant) {
    fx.control.push_back(make_control(MessageKind::kIWant, config_.self, *st.iWant, st.id));
    st.iWant.reset();
  }
}

Effects OptimumNode::send_iwant() {
  Effects fx;
  for (const auto& m : order_) {
    emit_iwant(messages_.at(m), fx);
  }
  return fx;
}

Effects OptimumNode::receive_iwant(PeerId from, const crypto::Digest& m) {
  MessageState* st = find(m);
  if (st == nullptr || !st->decoded) {
    return {};
  }
  enqueue(from, m, sign_new(rlnc::recode(st->decoded->basis, rng_)));
  ++counters_.recodes;
  return {};
}

Effects OptimumNode::on_publish(Bytes value) {
  Effects fx = publish(std::move(value));
  fx.merge(run_enabled());
  return fx;
}

Effects OptimumNode::on_envelope(const Envelope& env) {
  Effects fx;
  switch (env.kind) {
    case MessageKind::kShard:
      fx = receive_shard(env.from, env.shard());
      break;
    case MessageKind::kIDontWant:
      fx = receive_done(env.from, env.msgId);
      break;
    case MessageKind::kIHave:
      fx = receive_ihave(env.from, env.msgId);
      break;
    case MessageKind::kIWant:
      fx = receive_iwant(env.from, env.msgId);
      break;
    case MessageKind::kAlert:
      fx = receive_alert(env.from, env.msgId, env.alert());
      break;
    case MessageKind::kPolluted:
      fx = receive_polluted(env.from, env.msgId);
      break;
    case MessageKind::kFullMessage:
      break;
  }
  fx.merge(run_enabled());
  return fx;
}

Effects OptimumNode::on_heartbeat(Time now) {
  Effects fx = heartbeat(now);
  fx.merge(run_enabled());
  return fx;
}

Effects OptimumNode::run_enabled() {
  Effects fx;
  if (!msgBuffer_.empty()) {
    fx.merge(generate_shards());
  }
  while (!dirty_.empty()) {
    const std::vector<crypto::Digest> batch = std::move(dirty_);
    dirty_.clear();
    for (const auto& m : batch) {
      MessageState& st = messages_.at(m);
      if (config_.params.rugby) {
        emit_polluted(st, fx);
      }
      emit_done(st, fx);
      emit_iwant(st, fx);
      if (config_.params.rugby) {
        emit_alerts(st, fx);
        if (st.decoded && !st.quaShards.empty()) {
          fx.merge(check_shards(m));
        }
      }
    }
  }
  return fx;
}

}  // namespace galois::protocol
