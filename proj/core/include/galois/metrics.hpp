// SPDX-License-Identifier: Apache-2.0
//
// Run metrics and their CSV forms. Column sets are part of the tool's
// contract; add columns at the end only.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "galois/common.hpp"
#include "galois/keccak.hpp"
#include "galois/scenario.hpp"

namespace galois::netsim {

struct MessageMetrics {
  std::size_t index = 0;
  crypto::Digest id;
  PeerId publisher{};
  Time publishedAt{0};
  /// Per node; empty optional when not delivered within the horizon.
  std::vector<std::optional<Time>> deliveredAt;
  std::optional<Time> quorumAt;
};

struct NodeTraffic {
  std::uint64_t bytesSent = 0;
  std::uint64_t bytesReceived = 0;
  std::uint64_t payloadMessagesSent = 0;  // SHARD or FULLMSG
  std::uint64_t controlMessagesSent = 0;
  /// Non-innovative shard bytes (optimum) or duplicate FULLMSG bytes (gossipsub).
  std::uint64_t redundantBytes = 0;
};

struct RunMetrics {
  Protocol protocol = Protocol::kOptimum;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t D = 0;
  std::size_t k = 0;
  std::uint64_t messageSizeBytes = 0;
  double publishRatePerSec = 0;
  double byzantineFraction = 0;
  double deliveryQuorum = 0.95;
  double endTimeMs = 0;

  std::vector<MessageMetrics> messages;
  std::vector<NodeTraffic> traffic;
  std::vector<bool> byzantine;
  std::uint64_t alerts = 0;
  std::uint64_t quarantineEvents = 0;
  std::uint64_t integrityFailures = 0;
  std::uint64_t droppedByLoss = 0;
  crypto::Digest topologyDigest;
  std::optional<crypto::Digest> traceDigest;

  struct Summary {
    std::size_t messages = 0;
    std::size_t deliveredPairs = 0;   // (message, correct non-publisher node)
    std::size_t expectedPairs = 0;
    double deliveryRatio = 0;
    std::size_t quorumReached = 0;
    double meanQuorumMs = 0;
    double stdQuorumMs = 0;
    double meanLatencyMs = 0;
    double stdLatencyMs = 0;
    double maxLatencyMs = 0;
    /// Per message, std of delivery latency across nodes; then the mean over
    /// messages with at least two deliveries.
    double meanSpreadMs = 0;
    std::uint64_t totalBytes = 0;
    double bytesPerNode = 0;
    double redundantBytesPerNode = 0;
    std::uint64_t controlMessages = 0;
  };
  Summary summarize() const;
};

/// Population standard deviation; 0 for fewer than two samples.
double mean_of(const std::vector<double>& xs);
double stddev_of(const std::vector<double>& xs);

/// message,node,publisher,publish_ms,deliver_ms,latency_ms
void write_deliveries_csv(std::ostream& out, const RunMetrics& m);

std::string summary_header();
std::string summary_row(const RunMetrics& m);
void write_summary_csv(std::ostream& out, const RunMetrics& m);

/// One-line human summary, e.g. "delivered 128/128, quorum@95%=412ms".
std::string summary_line(const RunMetrics& m);

/// Fixed three-decimal rendering used in every CSV.
std::string fixed3(double v);

}  // namespace galois::netsim
