// SPDX-License-Identifier: Apache-2.0
//
// Scenario files are flat `key = value` text; `#` starts a comment. Keys:
//
//   seed, protocol (optimum|gossipsub), n, D, k, r, p,
//   publisherShards (multiplier|mesh), tHeartbeatMs, messageSizeBytes,
//   materializedBytes, publishCount, publishRatePerSec, publishWindowSeconds,
//   byzantineFraction, pollutionProb, bandwidthClasses, latencyModel,
//   horizonSeconds, deliveryQuorum, lossProb, forwardCap, rugby, traceDigest
//
// bandwidthClasses is a comma list of fraction:upBps:downBps.
// latencyModel is uniform:loMs:hiMs or matrix:<csv path>.
// Keys prefixed `sweep.` belong to sweep specs and are ignored here.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "galois/common.hpp"
#include "galois/optimum_node.hpp"

namespace galois::netsim {

enum class Protocol { kOptimum, kGossipsub };

const char* to_string(Protocol p) noexcept;
/// Throws Error(kConfig).
Protocol parse_protocol(const std::string& text);

struct BandwidthClass {
  double fraction = 1.0;
  double upBps = 1e9;
  double downBps = 1e9;
};

struct LatencyModel {
  enum class Kind { kUniform, kMatrix };
  Kind kind = Kind::kUniform;
  double loMs = 10.0;
  double hiMs = 150.0;
  std::string matrixPath;
};

struct Scenario {
  std::uint64_t seed = 1;
  Protocol protocol = Protocol::kOptimum;
  std::size_t n = 64;
  std::size_t D = 6;
  std::size_t k = 8;
  std::size_t r = 0;
  std::size_t p = 0;
  protocol::PublisherShards publisherShards = protocol::PublisherShards::kMultiplier;
  double tHeartbeatMs = 1000.0;
  std::uint64_t messageSizeBytes = 1 << 20;
  /// Bytes actually generated per message; 0 means messageSizeBytes. Timing
  /// always uses messageSizeBytes.
  std::uint64_t materializedBytes = 0;
  std::size_t publishCount = 1;
  double publishRatePerSec = 1.0;
  /// When positive, publishCount = ceil(publishRatePerSec * window).
  double publishWindowSeconds = 0.0;
  double byzantineFraction = 0.0;
  double pollutionProb = 1.0;
  std::vector<BandwidthClass> bandwidthClasses{{0.2, 1e9, 1e9}, {0.8, 5e7, 5e7}};
  LatencyModel latency;
  double horizonSeconds = 60.0;
  double deliveryQuorum = 0.95;
  double lossProb = 0.0;
  std::size_t forwardCap = 0;
  bool rugby = true;
  bool traceDigest = false;

  std::size_t effective_publish_count() const;
  std::uint64_t materialized_size() const;
  /// Throws Error(kConfig) with the offending key.
  void validate() const;
};

/// Applies one key; unknown keys throw Error(kConfig).
void apply_setting(Scenario& scenario, const std::string& key, const std::string& value);

/// Key/value pairs in file order, comments and blanks removed.
std::vector<std::pair<std::string, std::string>> parse_pairs(std::istream& in,
                                                             const std::string& origin);

Scenario parse_scenario(std::istream& in, const std::string& origin = "<stream>");
/// Throws Error(kConfig) if the file cannot be read.
Scenario load_scenario(const std::string& path);

/// Canonical text form; parse_scenario(to_config(s)) reproduces s.
std::string to_config(const Scenario& scenario);

}  // namespace galois::netsim
