// SPDX-License-Identifier: Apache-2.0
#include "galois/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace galois::netsim {
namespace {

double ms(Time t) { return static_cast<double>(t.count()) / 1e6; }

}  // namespace

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) {
    return 0;
  }
  double sum = 0;
  for (const double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs) {
  if (xs.size() < 2) {
    return 0;
  }
  const double mu = mean_of(xs);
  double acc = 0;
  for (const double x : xs) acc += (x - mu) * (x - mu);
  return std::sqrt(acc / static_cast<double>(xs.size()));
}

RunMetrics::Summary RunMetrics::summarize() const {
  Summary s;
  s.messages = messages.size();
  std::vector<double> quorum;
  std::vector<double> latency;
  std::vector<double> spread;
  for (const auto& msg : messages) {
    std::vector<double> perNode;
    for (std::size_t v = 0; v < msg.deliveredAt.size(); ++v) {
      if (v == to_u64(msg.publisher) || (v < byzantine.size() && byzantine[v])) {
        continue;
      }
      ++s.expectedPairs;
      if (msg.deliveredAt[v]) {
        ++s.deliveredPairs;
        perNode.push_back(ms(*msg.deliveredAt[v] - msg.publishedAt));
      }
    }
    if (perNode.size() >= 2) {
      spread.push_back(stddev_of(perNode));
    }
    latency.insert(latency.end(), perNode.begin(), perNode.end());
    if (msg.quorumAt) {
      ++s.quorumReached;
      quorum.push_back(ms(*msg.quorumAt - msg.publishedAt));
    }
  }
  s.deliveryRatio = s.expectedPairs == 0 ? 1.0
                                         : static_cast<double>(s.deliveredPairs) /
                                               static_cast<double>(s.expectedPairs);
  s.meanQuorumMs = mean_of(quorum);
  s.stdQuorumMs = stddev_of(quorum);
  s.meanLatencyMs = mean_of(latency);
  s.stdLatencyMs = stddev_of(latency);
  s.maxLatencyMs = latency.empty() ? 0 : *std::max_element(latency.begin(), latency.end());
  s.meanSpreadMs = mean_of(spread);
  std::uint64_t redundant = 0;
  for (const auto& t : traffic) {
    s.totalBytes += t.bytesSent;
    redundant += t.redundantBytes;
    s.controlMessages += t.controlMessagesSent;
  }
  if (!traffic.empty()) {
    s.bytesPerNode = static_cast<double>(s.totalBytes) / static_cast<double>(traffic.size());
    s.redundantBytesPerNode = static_cast<double>(redundant) / static_cast<double>(traffic.size());
  }
  return s;
}

void write_deliveries_csv(std::ostream& out, const RunMetrics& m) {
  out << "message,node,publisher,publish_ms,deliver_ms,latency_ms\n";
  for (const auto& msg : m.messages) {
    for (std::size_t v = 0; v < msg.deliveredAt.size(); ++v) {
      if (!msg.deliveredAt[v]) {
        continue;
      }
      out << msg.index << ',' << v << ',' << to_u64(msg.publisher) << ','
          << fixed3(ms(msg.publishedAt)) << ',' << fixed3(ms(*msg.deliveredAt[v])) << ','
          << fixed3(ms(*msg.deliveredAt[v] - msg.publishedAt)) << '\n';
    }
  }
}

std::string summary_header() {
  return "protocol,seed,n,D,k,message_size,publish_rate,byzantine_fraction,messages,"
         "delivered_pairs,expected_pairs,delivery_ratio,quorum_reached,mean_quorum_ms,"
         "std_quorum_ms,mean_latency_ms,std_latency_ms,max_latency_ms,mean_spread_ms,total_bytes,"
         "bytes_per_node,redundant_bytes_per_node,control_messages,alerts,quarantine_events,"
         "integrity_failures,end_ms,topology_digest";
}

std::string summary_row(const RunMetrics& m) {
  const RunMetrics::Summary s = m.summarize();
  std::ostringstream out;
  out << to_string(m.protocol) << ',' << m.seed << ',' << m.n << ',' << m.D << ',' << m.k << ','
      << m.messageSizeBytes << ',' << fixed3(m.publishRatePerSec) << ','
      << fixed3(m.byzantineFraction) << ',' << s.messages << ',' << s.deliveredPairs << ','
      << s.expectedPairs << ',' << fixed3(s.deliveryRatio) << ',' << s.quorumReached << ','
      << fixed3(s.meanQuorumMs) << ',' << fixed3(s.stdQuorumMs) << ','
      << fixed3(s.meanLatencyMs) << ',' << fixed3(s.stdLatencyMs) << ','
      << fixed3(s.maxLatencyMs) << ',' << fixed3(s.meanSpreadMs) << ',' << s.totalBytes << ',' << fixed3(s.bytesPerNode) << ','
      << fixed3(s.redundantBytesPerNode) << ',' << s.controlMessages << ',' << m.alerts << ','
      << m.quarantineEvents << ',' << m.integrityFailures << ',' << fixed3(m.endTimeMs) << ','
      << m.topologyDigest.hex();
  return out.str();
}

void write_summary_csv(std::ostream& out, const RunMetrics& m) {
  out << summary_header() << '\n' << summary_row(m) << '\n';
}

std::string summary_line(const RunMetrics& m) {
  const RunMetrics::Summary s = m.summarize();
  std::size_t delivered = 0;
  std::size_t total = 0;
  for (const auto& msg : m.messages) {
    for (const auto& d : msg.deliveredAt) {
      ++total;
      delivered += d.has_value() ? 1 : 0;
    }
  }
  std::ostringstream out;
  out << "delivered " << delivered << '/' << total << ", quorum@"
      << static_cast<int>(std::lround(m.deliveryQuorum * 100)) << "%=";
  if (s.quorumReached == 0) {
    out << "n/a";
  } else {
    out << std::lround(s.meanQuorumMs) << "ms";
  }
  if (s.quorumReached != s.messages) {
    out << " (" << s.quorumReached << '/' << s.messages << " messages reached quorum)";
  }
  return out.str();
}

}  // namespace galois::netsim
