// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "galois/common.hpp"
#include "galois/keccak.hpp"
#include "galois/random.hpp"
#include "galois/scenario.hpp"

namespace galois::netsim {

/// Peers are numbered 0..n-1; PeerId{i} is node i.
struct Topology {
  std::size_t n = 0;
  std::vector<std::vector<PeerId>> neighbors;  // sorted, symmetric
  std::vector<std::vector<PeerId>> mesh;       // sorted, symmetric, subset of neighbors
  std::vector<double> latencyMs;               // n*n, one-way, row = sender
  std::vector<double> upBps;
  std::vector<double> downBps;
  /// Index into Scenario::bandwidthClasses per node.
  std::vector<std::size_t> bandwidthClass;

  double latency_ms(std::size_t from, std::size_t to) const { return latencyMs[from * n + to]; }
  bool is_connected_mesh() const;
  crypto::Digest digest() const;
};

/// Mesh degrees land in [min(4, D), min(max(12, D), n - 1)] with target D; the
/// mesh is connected; metadata links raise the mean degree to min(2D, n - 1).
/// Throws Error(kInfeasibleDegree) when D >= n or no connected mesh is found.
Topology build_topology(const Scenario& scenario, Rng& rng);

/// n rows of n comma-separated one-way latencies in milliseconds.
/// Throws Error(kConfig) on a malformed file.
std::vector<double> load_latency_matrix(const std::string& path, std::size_t n);

/// Index of the class with the largest min(up, down), first on ties.
std::size_t top_bandwidth_class(const Scenario& scenario);

}  // namespace galois::netsim
