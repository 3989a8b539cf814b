// SPDX-License-Identifier: Apache-2.0
//
// Pollution handling for OptimumNode. Accusations must stay sound: an honest
// relay can forward contaminated combinations before it notices its own
// pollution, so evidence against a mesh peer only counts once that peer has
// announced a successful decode without having reported itself polluted.
// Links are FIFO, so an honest relay's POLLUTED notice always arrives before
// its IDONTWANT or IHAVE.
#include <algorithm>
#include <unordered_set>

#include "galois/optimum_node.hpp"
#include "galois/rugby.hpp"

namespace galois::protocol {

bool witness_test(const rlnc::Shard& shard, const std::vector<Bytes>& fragments) {
  if (shard.k() != fragments.size() || fragments.empty() ||
      shard.payload.size() != fragments.front().size()) {
    return false;
  }
  return rlnc::combine(shard.coeffs, fragments) == shard.payload;
}

void OptimumNode::emit_polluted(MessageState& st, Effects& fx) {
  if (!st.isPolluted) {
    return;
  }
  for (const PeerId v : mesh_) {
    if (st.pollutedSent.insert(v).second) {
      st.rejoinTargets.insert(v);
      fx.control.push_back(make_control(MessageKind::kPolluted, config_.self, v, st.id));
    }
  }
}

void OptimumNode::emit_alerts(MessageState& st, Effects& fx) {
  for (const auto& held : st.malShards) {
    if (st.malPeers.count(held.from) == 0) {
      continue;
    }
    for (const PeerId v : mesh_) {
      if (v != held.from && st.alertsSent.emplace(held.from, v).second) {
        fx.control.push_back(make_alert(config_.self, v, held.from, held.shard));
      }
    }
  }
}

void OptimumNode::accuse(MessageState& st, PeerId accused, AccusationSource source) {
  if (accused == config_.self || st.quaPeers.count(accused) != 0) {
    return;
  }
  if (st.malPeers.insert(accused).second) {
    accusations_.push_back(AccusationEvent{st.id, accused, source});
    touch(st.id);
  }
}

void OptimumNode::direct_evidence(MessageState& st, const HeldShard& held) {
  const PeerId accused = held.from;
  if (accused == config_.self || st.selfReported.count(accused) != 0) {
    return;
  }
  if (mesh_.count(accused) == 0 || st.isDone.count(accused) != 0) {
    accuse(st, accused, AccusationSource::kDirect);
    return;
  }
  st.pendingAccusations.emplace(accused, held);
}

void OptimumNode::settle_pending(MessageState& st, PeerId peer) {
  const auto it = st.pendingAccusations.find(peer);
  if (it == st.pendingAccusations.end()) {
    return;
  }
  const HeldShard held = it->second;
  st.pendingAccusations.erase(it);
  if (st.selfReported.count(peer) == 0) {
    accuse(st, peer, AccusationSource::kDirect);
  }
}

void OptimumNode::audit_after_decode(MessageState& st, const HeldShard& held) {
  if (!witness_test(*held.shard, st.decoded->fragments)) {
    st.malShards.push_back(held);
    direct_evidence(st, held);
    touch(st.id);
  }
}

Effects OptimumNode::pollution_discovery(const crypto::Digest& m) {
  MessageState* st = find(m);
  if (st == nullptr || !st->decoded) {
    return {};
  }
  std::unordered_set<const rlnc::Shard*> basis;
  for (const auto& s : st->decoded->basis) {
    basis.insert(s.get());
  }
  std::vector<HeldShard> flagged;
  const auto sweep = [&](std::vector<HeldShard>& held) {
    const auto bad = std::stable_partition(held.begin(), held.end(), [&](const HeldShard& h) {
      return basis.count(h.shard.get()) != 0 || witness_test(*h.shard, st->decoded->fragments);
    });
    flagged.insert(flagged.end(), bad, held.end());
    held.erase(bad, held.end());
  };
  sweep(st->shardSet);
  sweep(st->spare);
  std::sort(flagged.begin(), flagged.end(),
            [](const HeldShard& a, const HeldShard& b) { return a.seq < b.seq; });
  for (const auto& h : flagged) {
    st->malShards.push_back(h);
    direct_evidence(*st, h);
  }
  if (!flagged.empty()) {
    touch(m);
  }
  return {};
}

Effects OptimumNode::self_isolate(const crypto::Digest& m) {
  Effects fx;
  MessageState* st = find(m);
  if (st == nullptr || st->decoded || st->shardSet.size() < config_.params.k) {
    return fx;
  }
  if (!st->isPolluted) {
    st->isPolluted = true;
    st->everPolluted = true;
    st->pollutedSent.clear();
    touch(m);
  }
  try_recover(*st, fx);
  return fx;
}

bool OptimumNode::try_recover(MessageState& st, Effects& fx) {
  if (st.decoded || (!st.isPolluted && st.quaShards.empty())) {
    return false;
  }
  // Quarantined shards are candidates too: a basis that decodes to the right
  // digest vouches for every shard in it, and check_shards then readmits the
  // senders. Without this a node whose whole mesh raised its hand never
  // decodes.
  std::vector<const HeldShard*> pool;
  for (const auto& h : st.shardSet) {
    pool.push_back(&h);
  }
  for (const auto& h : st.spare) {
    pool.push_back(&h);
  }
  for (const auto& h : st.quaShards) {
    pool.push_back(&h);
  }
  std::sort(pool.begin(), pool.end(),
            [](const HeldShard* a, const HeldShard* b) { return a->seq > b->seq; });

  std::vector<PeerId> senders;
  for (const HeldShard* h : pool) {
    if (std::find(senders.begin(), senders.end(), h->from) == senders.end()) {
      senders.push_back(h->from);
    }
  }

  const std::size_t k = config_.params.k;
  std::size_t budget = config_.params.recoveryAttempts;
  // Returns true once a candidate basis decodes to the right digest.
  const auto attempt = [&](const std::vector<const HeldShard*>& ordering,
                           const std::set<PeerId>& excluded) {
    rlnc::RankTracker tracker(k);
    std::vector<const HeldShard*> chosen;
    for (const HeldShard* h : ordering) {
      if (excluded.count(h->from) == 0 && tracker.add(h->shard->coeffs)) {
        chosen.push_back(h);
        if (tracker.full()) {
          break;
        }
      }
    }
    if (!tracker.full()) {
      return false;
    }
    std::vector<std::uint64_t> key;
    for (const HeldShard* h : chosen) {
      key.push_back(h->seq);
    }
    std::sort(key.begin(), key.end());
    if (!st.triedBases.insert(key).second) {
      return false;
    }
    --budget;
    std::vector<rlnc::ShardPtr> basis;
    for (const HeldShard* h : chosen) {
      basis.push_back(h->shard);
    }
    auto value = std::make_shared<const Bytes>(rlnc::decode(basis, k, basis.front()->originalLength));
    if (crypto::hash(*value) != st.id) {
      return false;
    }
    if (!st.isPolluted && st.forwarded > 0 && holds_polluted(st, *value)) {
      // Recodes already sent mixed in a bad shard that this basis left out:
      // raise the hand before rejoining, as a failed decode would have.
      st.isPolluted = true;
      st.everPolluted = true;
      st.pollutedSent.clear();
      emit_polluted(st, fx);
    }
    const bool wasPolluted = st.isPolluted;
    ++counters_.recoveries;
    mark_decoded(st, std::move(value), std::move(basis), fx);
    if (wasPolluted) {
      after_recovery(st);
    }
    return true;
  };

  std::set<PeerId> suspects(st.malPeers.begin(), st.malPeers.end());
  suspects.insert(st.quaPeers.begin(), st.quaPeers.end());
  if (attempt(pool, suspects) || budget == 0) {
    return st.decoded.has_value();
  }
  if (attempt(pool, {}) || budget == 0) {
    return st.decoded.has_value();
  }
  for (const PeerId s : senders) {
    std::set<PeerId> excluded = suspects;
    excluded.insert(s);
    if (attempt(pool, excluded) || budget == 0) {
      return st.decoded.has_value();
    }
  }
  std::vector<const HeldShard*> shuffled = pool;
  for (std::size_t i = 0; i < 2 * config_.params.recoveryAttempts && budget > 0; ++i) {
    shuffle(shuffled, rng_);
    if (attempt(shuffled, {})) {
      return true;
    }
  }
  return false;
}

bool OptimumNode::holds_polluted(const MessageState& st, const Bytes& value) const {
  const std::vector<Bytes> fragments = rlnc::fragment(value, config_.params.k);
  return std::any_of(st.shardSet.begin(), st.shardSet.end(),
                     [&](const HeldShard& h) { return !witness_test(*h.shard, fragments); });
}

void OptimumNode::after_recovery(MessageState& st) {
  sendBuffer_.erase(std::remove_if(sendBuffer_.begin(), sendBuffer_.end(),
                                   [&](const Queued& q) { return q.m == st.id && !q.proof; }),
                    sendBuffer_.end());
  for (const PeerId v : st.rejoinTargets) {
    enqueue(v, st.id, sign_new(rlnc::recode(st.decoded->basis, rng_)), true);
    ++counters_.recodes;
  }
  st.rejoinTargets.clear();
}

Effects OptimumNode::send_polluted() {
  Effects fx;
  for (const auto& m : order_) {
    emit_polluted(messages_.at(m), fx);
  }
  return fx;
}

Effects OptimumNode::receive_polluted(PeerId from, const crypto::Digest& m) {
  MessageState& st = state(m);
  touch(m);
  st.quaPeers.insert(from);
  st.malPeers.erase(from);
  st.selfReported.insert(from);
  st.pendingAccusations.erase(from);
  return {};
}

Effects OptimumNode::send_alert() {
  Effects fx;
  for (const auto& m : order_) {
    emit_alerts(messages_.at(m), fx);
  }
  return fx;
}

Effects OptimumNode::receive_alert(PeerId from, const crypto::Digest& m, const AlertBody& alert) {
  ++counters_.alertsReceived;
  MessageState& st = state(m);
  const rlnc::Shard& evidence = *alert.evidence;
  bool valid = evidence.creator == alert.accused && evidence.msgId == m &&
               evidence.k() == config_.params.k;
  if (valid) {
    try {
      valid = rlnc::verify(evidence, *config_.scheme);
    } catch (const Error&) {
      valid = false;
    }
  }
  if (!valid) {
    ++counters_.bogusAlerts;
    return {};
  }
  if (alert.accused == config_.self || mesh_.count(alert.accused) == 0) {
    return {};
  }
  if (!st.decoded) {
    ++counters_.alertsDeferred;
    st.deferredAlerts.emplace_back(from, alert);
    return {};
  }
  evaluate_alert(st, alert);
  return {};
}

void OptimumNode::evaluate_alert(MessageState& st, const AlertBody& alert) {
  if (st.quaPeers.count(alert.accused) != 0 || st.selfReported.count(alert.accused) != 0) {
    return;
  }
  if (witness_test(*alert.evidence, st.decoded->fragments)) {
    ++counters_.bogusAlerts;
    return;
  }
  accuse(st, alert.accused, AccusationSource::kAlert);
}

void OptimumNode::process_deferred_alerts(MessageState& st) {
  auto deferred = std::move(st.deferredAlerts);
  st.deferredAlerts.clear();
  for (const auto& entry : deferred) {
    evaluate_alert(st, entry.second);
  }
}

Effects OptimumNode::check_shards(const crypto::Digest& m) {
  MessageState* st = find(m);
  if (st == nullptr || !st->decoded || st->quaShards.empty()) {
    return {};
  }
  for (const auto& held : st->quaShards) {
    if (st->quaPeers.count(held.from) != 0 && witness_test(*held.shard, st->decoded->fragments)) {
      st->quaPeers.erase(held.from);
      ++counters_.quarantineAdmissions;
    }
  }
  st->quaShards.clear();
  return {};
}

}  // namespace galois::protocol
