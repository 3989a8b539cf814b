// SPDX-License-Identifier: Apache-2.0
//
// Parameter sweeps over one scenario axis. A sweep file is a scenario file
// plus three keys:
//
//   sweep.axis        = messageSize | publishRate | byzantineFraction
//   sweep.values      = comma list
//   sweep.repetitions = count >= 1
//
// Repetition i runs with seed mix_seed(base.seed, i) for every axis value and
// every protocol, so paired runs share topology, publishers and adversaries.
#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "galois/metrics.hpp"
#include "galois/simulator.hpp"
#include "galois/scenario.hpp"

namespace galois::netsim {

enum class SweepAxis { kMessageSize, kPublishRate, kByzantineFraction };

const char* to_string(SweepAxis axis) noexcept;
/// Throws Error(kConfig).
SweepAxis parse_axis(const std::string& text);

struct SweepSpec {
  Scenario base;
  SweepAxis axis = SweepAxis::kMessageSize;
  std::vector<double> values;
  std::size_t repetitions = 1;

  /// Throws Error(kConfig).
  void validate() const;
};

SweepSpec parse_sweep(std::istream& in, const std::string& origin = "<stream>");
SweepSpec load_sweep(const std::string& path);

std::uint64_t repetition_seed(std::uint64_t baseSeed, std::size_t repetition);

/// The scenario for one grid point.
Scenario sweep_point(const SweepSpec& spec, std::size_t valueIndex, std::size_t repetition,
                     Protocol protocol);

struct SweepRun {
  Protocol protocol = Protocol::kOptimum;
  std::size_t valueIndex = 0;
  double value = 0;
  std::size_t repetition = 0;
  RunMetrics metrics;
};

using SweepProgress = std::function<void(const SweepRun&)>;

/// Runs the full grid for each protocol on up to `workers` threads (0 picks
/// the hardware concurrency). Results come back in grid order:
/// protocol-major, then value, then repetition. `progress` runs on the
/// calling thread.
std::vector<SweepRun> run_sweep(const SweepSpec& spec, const std::vector<Protocol>& protocols,
                                std::size_t workers = 0, const SweepProgress& progress = {});

/// axis,value,repetition followed by the summary columns.
std::string sweep_header();
void write_sweep_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepRun>& runs);

/// Statistics pooled over every message of a set of runs.
struct PooledStats {
  std::size_t runs = 0;
  std::size_t messages = 0;
  std::size_t quorumReached = 0;
  double meanQuorumMs = 0;
  double stdQuorumMs = 0;
  double deliveryRatio = 0;
  double meanLatencyMs = 0;
  double stdLatencyMs = 0;
  double redundantBytesPerNode = 0;
};

PooledStats pool(const std::vector<const RunMetrics*>& runs);

struct CompareRow {
  double value = 0;
  PooledStats optimum;
  PooledStats gossipsub;
};

std::vector<CompareRow> compare_rows(const SweepSpec& spec, const std::vector<SweepRun>& runs);
void write_compare_csv(std::ostream& out, SweepAxis axis, const std::vector<CompareRow>& rows);
void write_compare_table(std::ostream& out, SweepAxis axis, const std::vector<CompareRow>& rows);

/// One group of summary rows read back from CSV files.
struct SummaryGroup {
  std::string protocol;
  std::string messageSize;
  std::string publishRate;
  std::string byzantineFraction;
  std::size_t runs = 0;
  double meanQuorumMs = 0;
  double stdQuorumMs = 0;  // across runs
  double meanLatencyMs = 0;
  double stdLatencyMs = 0;  // mean of per-run std
  double deliveryRatio = 0;
};

/// Groups every CSV row that carries the summary columns by protocol, message
/// size, publish rate and Byzantine fraction. Throws Error(kConfig) when no
/// file under `dir` has summary rows.
std::vector<SummaryGroup> summarize_directory(const std::string& dir);
void write_summary_table_csv(std::ostream& out, const std::vector<SummaryGroup>& groups);
void write_summary_table_text(std::ostream& out, const std::vector<SummaryGroup>& groups);

}  // namespace galois::netsim
