// SPDX-License-Identifier: Apache-2.0
//
// Deterministic discrete-event simulator. Transfer model per envelope sent
// from u to v at time t (size in bits, rates in bits/s, latency one-way):
//
//   uplink:   FIFO per sender, busy until  t_up = t + size / up(u)
//   downlink: FIFO per receiver, reserved at send time,
//             down_start = max(t + lat, down_free(v)), down_end = down_start + size / down(v)
//   delivery: max(down_end, t_up + lat)
//
// Uncontended this is size / min(up, down) + latency. Control envelopes jump
// ahead of queued payload, never ahead of the envelope on the wire.
#pragma once

#include <memory>
#include <vector>

#include "galois/gossipsub_node.hpp"
#include "galois/metrics.hpp"
#include "galois/optimum_node.hpp"
#include "galois/scenario.hpp"
#include "galois/topology.hpp"

namespace galois::netsim {

/// Seeded choice of round(fraction * n) Byzantine nodes, never a publisher.
std::vector<bool> inject_adversary(std::size_t n, double fraction,
                                   const std::vector<PeerId>& publishers, Rng& rng);

/// Transfer time of `bytes` over an idle link.
Time transfer_time(std::uint64_t bytes, double upBps, double downBps, double latencyMs);

class Simulation {
 public:
  explicit Simulation(const Scenario& scenario);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Runs to the horizon, or earlier once every correct node has every message
  /// and no payload-bearing traffic has moved for three heartbeat periods.
  RunMetrics run();

  const Scenario& scenario() const;
  const Topology& topology() const;
  /// Publisher per message index.
  const std::vector<PeerId>& publishers() const;
  const std::vector<bool>& byzantine() const;
  /// Digest over topology, publishers and adversary set.
  crypto::Digest setup_digest() const;
  /// Ids of published messages, in publish order (filled by run()).
  const std::vector<crypto::Digest>& message_ids() const;
  /// The message value for index i, as generated for publishing.
  Bytes message_value(std::size_t i) const;

  /// nullptr when the scenario runs the other protocol.
  const protocol::OptimumNode* optimum_node(std::size_t i) const;
  const gossipsub::GossipsubNode* gossip_node(std::size_t i) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

RunMetrics run_scenario(const Scenario& scenario);

}  // namespace galois::netsim
