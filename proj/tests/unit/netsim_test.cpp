// SPDX-License-Identifier: Apache-2.0
#include "galois/simulator.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <queue>
#include <sstream>

#include "galois/metrics.hpp"
#include "galois/scenario.hpp"
#include "galois/topology.hpp"

namespace galois::netsim {
namespace {

std::size_t index_of(PeerId p) { return static_cast<std::size_t>(to_u64(p)); }

Scenario small(std::uint64_t seed, std::size_t n = 24, std::size_t D = 4) {
  Scenario s;
  s.seed = seed;
  s.n = n;
  s.D = D;
  s.k = 4;
  s.messageSizeBytes = 8192;
  s.publishCount = 2;
  s.publishRatePerSec = 4;
  s.horizonSeconds = 30;
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Independent BFS over the mesh lists.
bool mesh_connected(const Topology& t) {
  std::vector<bool> seen(t.n, false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (const PeerId v : t.mesh[u]) {
      if (!seen[index_of(v)]) {
        seen[index_of(v)] = true;
        ++count;
        q.push(index_of(v));
      }
    }
  }
  return count == t.n;
}

void check_topology(const Scenario& s, const Topology& t) {
  ASSERT_EQ(t.n, s.n);
  const std::size_t lo = std::min<std::size_t>(4, s.D);
  const std::size_t hi = std::min(std::max<std::size_t>(12, s.D), s.n - 1);
  std::size_t degreeSum = 0;
  for (std::size_t u = 0; u < t.n; ++u) {
    EXPECT_TRUE(std::is_sorted(t.neighbors[u].begin(), t.neighbors[u].end()));
    EXPECT_TRUE(std::is_sorted(t.mesh[u].begin(), t.mesh[u].end()));
    EXPECT_EQ(std::adjacent_find(t.neighbors[u].begin(), t.neighbors[u].end()),
              t.neighbors[u].end());
    EXPECT_GE(t.mesh[u].size(), lo);
    EXPECT_LE(t.mesh[u].size(), hi);
    degreeSum += t.neighbors[u].size();
    for (const PeerId v : t.mesh[u]) {
      EXPECT_NE(index_of(v), u);
      EXPECT_TRUE(std::binary_search(t.neighbors[u].begin(), t.neighbors[u].end(), v));
      const auto& back = t.mesh[index_of(v)];
      EXPECT_TRUE(std::binary_search(back.begin(), back.end(), peer(u)));
    }
    for (const PeerId v : t.neighbors[u]) {
      EXPECT_NE(index_of(v), u);
      const auto& back = t.neighbors[index_of(v)];
      EXPECT_TRUE(std::binary_search(back.begin(), back.end(), peer(u)));
    }
    for (std::size_t v = 0; v < t.n; ++v) {
      if (u == v) continue;
      EXPECT_EQ(t.latency_ms(u, v), t.latency_ms(v, u));
      EXPECT_GE(t.latency_ms(u, v), s.latency.loMs);
      EXPECT_LE(t.latency_ms(u, v), s.latency.hiMs);
    }
  }
  EXPECT_TRUE(mesh_connected(t));
  EXPECT_TRUE(t.is_connected_mesh());
  const double meanDegree = static_cast<double>(degreeSum) / static_cast<double>(t.n);
  EXPECT_GE(meanDegree + 1e-9, static_cast<double>(std::min(2 * s.D, s.n - 1)) - 1.0 / t.n);
}

TEST(Topology, InvariantsAcrossSeedsAndSizes) {
  for (const auto& [n, D] : std::vector<std::pair<std::size_t, std::size_t>>{
           {5, 2}, {10, 3}, {24, 4}, {64, 6}, {200, 6}, {40, 12}, {30, 20}}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SCOPED_TRACE(testing::Message() << "n=" << n << " D=" << D << " seed=" << seed);
      Scenario s = small(seed, n, D);
      Rng rng(seed);
      check_topology(s, build_topology(s, rng));
    }
  }
}

TEST(Topology, FourNodesDegreeTwo) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Scenario s = small(seed, 4, 2);
    Rng rng(seed);
    const Topology t = build_topology(s, rng);
    for (std::size_t u = 0; u < 4; ++u) {
      EXPECT_GE(t.mesh[u].size(), 2u);
      EXPECT_LE(t.mesh[u].size(), 3u);
    }
    EXPECT_TRUE(mesh_connected(t));
  }
}

TEST(Topology, BandwidthClassesFollowFractions) {
  Scenario s = small(3, 100, 6);
  s.bandwidthClasses = {{0.2, 1e9, 1e9}, {0.8, 5e7, 5e7}};
  Rng rng(3);
  const Topology t = build_topology(s, rng);
  EXPECT_EQ(std::count(t.bandwidthClass.begin(), t.bandwidthClass.end(), 0u), 20);
  for (std::size_t u = 0; u < t.n; ++u) {
    EXPECT_EQ(t.upBps[u], s.bandwidthClasses[t.bandwidthClass[u]].upBps);
  }
  EXPECT_EQ(top_bandwidth_class(s), 0u);
}

TEST(Topology, DeterministicPerSeed) {
  const Scenario s = small(11, 50, 6);
  Rng a(11), b(11), c(12);
  const auto da = build_topology(s, a).digest();
  EXPECT_EQ(da, build_topology(s, b).digest());
  EXPECT_NE(da, build_topology(s, c).digest());
}

TEST(Topology, DegreeNotBelowNodeCount) {
  Scenario s = small(1, 6, 2);
  s.D = 6;
  Rng rng(1);
  try {
    build_topology(s, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleDegree);
  }
  try {
    s.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleDegree);
  }
}

TEST(Topology, LatencyMatrixFile) {
  const auto path = std::filesystem::temp_directory_path() / "galois_latency_test.csv";
  {
    std::ofstream out(path);
    out << "0,10,20\n10,0,30\n20,30,0\n";
  }
  const auto m = load_latency_matrix(path.string(), 3);
  EXPECT_EQ(m, (std::vector<double>{0, 10, 20, 10, 0, 30, 20, 30, 0}));
  EXPECT_THROW(load_latency_matrix(path.string(), 4), Error);
  {
    std::ofstream out(path);
    out << "0,x,20\n10,0,30\n20,30,0\n";
  }
  EXPECT_THROW(load_latency_matrix(path.string(), 3), Error);
  EXPECT_THROW(load_latency_matrix("/nonexistent/latency.csv", 3), Error);

  {
    std::ofstream out(path);
    out << "0,10,20\n10,0,30\n20,30,0\n";
  }
  Scenario s = small(1, 3, 2);
  s.latency = LatencyModel{LatencyModel::Kind::kMatrix, 0, 0, path.string()};
  Rng rng(1);
  EXPECT_EQ(build_topology(s, rng).latency_ms(1, 2), 30.0);
  std::filesystem::remove(path);
}

TEST(Adversary, SelectionRules) {
  Rng rng(1);
  const auto none = inject_adversary(64, 0.0, {peer(0)}, rng);
  EXPECT_EQ(std::count(none.begin(), none.end(), true), 0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng r(seed);
    const std::vector<PeerId> publishers{peer(seed % 64), peer((seed * 7) % 64)};
    const auto one = inject_adversary(64, 1.0 / 64, publishers, r);
    EXPECT_EQ(std::count(one.begin(), one.end(), true), 1);
    for (const PeerId p : publishers) EXPECT_FALSE(one[index_of(p)]);
  }
  Rng r(5);
  const auto many = inject_adversary(10, 0.9, {peer(3)}, r);
  EXPECT_EQ(std::count(many.begin(), many.end(), true), 9);
  EXPECT_FALSE(many[3]);
}

TEST(Transfer, HandComputedIdleLink) {
  // 1000 bytes at 1 Gbit/s is 8 us; plus 50 ms of propagation.
  EXPECT_EQ(transfer_time(1000, 1e9, 1e9, 50.0), Time(50'008'000));
  // The slower side sets the rate: 1000 bytes at 8 Mbit/s is 1 ms.
  EXPECT_EQ(transfer_time(1000, 1e9, 8e6, 0.0), Time(1'000'000));
}

TEST(Simulation, TwoNodeDeliveryMatchesHandComputation) {
  Scenario s;
  s.protocol = Protocol::kGossipsub;
  s.n = 2;
  s.D = 1;
  s.messageSizeBytes = 1000;
  s.publishCount = 1;
  s.bandwidthClasses = {{1.0, 1e9, 1e9}};
  s.latency = LatencyModel{LatencyModel::Kind::kUniform, 50, 50, ""};
  s.horizonSeconds = 10;
  const RunMetrics m = run_scenario(s);
  ASSERT_EQ(m.messages.size(), 1u);
  const auto& msg = m.messages[0];
  const std::size_t receiver = 1 - index_of(msg.publisher);
  ASSERT_TRUE(msg.deliveredAt[receiver].has_value());
  // FULLMSG: 53-byte header + 8-byte length + 1000-byte value = 8488 bits,
  // 8.488 us at 1 Gbit/s on both ends, then 50 ms of latency.
  EXPECT_EQ(*msg.deliveredAt[receiver] - msg.publishedAt, Time(50'008'488));
  EXPECT_EQ(*msg.deliveredAt[index_of(msg.publisher)], msg.publishedAt);
}

TEST(Simulation, BackToBackSendsQueueOnTheUplink) {
  // A gossipsub publisher with three mesh peers serializes three FULLMSGs;
  // the i-th one leaves the uplink after i serialization delays.
  Scenario s;
  s.protocol = Protocol::kGossipsub;
  s.n = 4;
  s.D = 3;
  s.messageSizeBytes = 125'000 - 61;  // 1 Mbit on the wire
  s.publishCount = 1;
  s.bandwidthClasses = {{1.0, 1e8, 1e9}};
  s.latency = LatencyModel{LatencyModel::Kind::kUniform, 20, 20, ""};
  s.horizonSeconds = 10;
  const RunMetrics m = run_scenario(s);
  std::vector<Time> lat;
  const auto& msg = m.messages[0];
  for (std::size_t v = 0; v < 4; ++v) {
    if (v != index_of(msg.publisher)) lat.push_back(*msg.deliveredAt[v] - msg.publishedAt);
  }
  std::sort(lat.begin(), lat.end());
  // 10 ms per Mbit at 100 Mbit/s up, then 20 ms latency.
  EXPECT_EQ(lat, (std::vector<Time>{Time(30'000'000), Time(40'000'000), Time(50'000'000)}));
}

TEST(Simulation, ZeroPublishesGiveEmptyMetrics) {
  Scenario s = small(4);
  s.publishCount = 0;
  const RunMetrics m = run_scenario(s);
  EXPECT_TRUE(m.messages.empty());
  const auto sum = m.summarize();
  EXPECT_EQ(sum.messages, 0u);
  EXPECT_EQ(sum.expectedPairs, 0u);
  EXPECT_LT(m.endTimeMs, s.horizonSeconds * 1000);
  for (const auto& t : m.traffic) EXPECT_EQ(t.payloadMessagesSent, 0u);
}

TEST(Simulation, ValidityCausalityAndEarlyStop) {
  for (const Protocol p : {Protocol::kOptimum, Protocol::kGossipsub}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      SCOPED_TRACE(testing::Message() << to_string(p) << " seed " << seed);
      Scenario s = small(seed, 40, 6);
      s.protocol = p;
      s.publishCount = 3;
      Simulation sim(s);
      const RunMetrics m = sim.run();
      const Topology& t = sim.topology();
      double lastDelivery = 0;
      for (const auto& msg : m.messages) {
        const std::size_t pub = index_of(msg.publisher);
        EXPECT_EQ(t.bandwidthClass[pub], top_bandwidth_class(s));
        for (std::size_t v = 0; v < s.n; ++v) {
          ASSERT_TRUE(msg.deliveredAt[v].has_value()) << "node " << v;
          if (v == pub) continue;
          double minLat = 1e18;
          for (std::size_t u = 0; u < s.n; ++u) {
            if (u != v) minLat = std::min(minLat, t.latency_ms(u, v));
          }
          const double ms = std::chrono::duration<double, std::milli>(*msg.deliveredAt[v] -
                                                                      msg.publishedAt).count();
          EXPECT_GE(ms, minLat);
          lastDelivery = std::max(
              lastDelivery,
              std::chrono::duration<double, std::milli>(*msg.deliveredAt[v]).count());
        }
        ASSERT_TRUE(msg.quorumAt.has_value());
        EXPECT_GE(*msg.quorumAt - msg.publishedAt, Time(static_cast<std::int64_t>(s.latency.loMs * 1e6)));
      }
      EXPECT_EQ(m.summarize().deliveryRatio, 1.0);
      EXPECT_EQ(m.integrityFailures, 0u);
      // Stops once idle for three heartbeat periods, well before the horizon.
      EXPECT_LT(m.endTimeMs, s.horizonSeconds * 1000);
      EXPECT_GE(m.endTimeMs, lastDelivery + 3 * s.tHeartbeatMs);
    }
  }
}

TEST(Simulation, UplinkNeverExceedsItsRate) {
  Scenario s = small(6, 40, 6);
  s.messageSizeBytes = 200'000;
  s.publishCount = 4;
  Simulation sim(s);
  const RunMetrics m = sim.run();
  const double seconds = m.endTimeMs / 1000.0;
  std::uint64_t sent = 0, received = 0;
  for (std::size_t u = 0; u < s.n; ++u) {
    // Slack of one largest envelope: a full shard.
    const double slackBits = 8.0 * (200'000 / s.k + 4096);
    EXPECT_LE(8.0 * static_cast<double>(m.traffic[u].bytesSent),
              sim.topology().upBps[u] * seconds + slackBits);
    sent += m.traffic[u].bytesSent;
    received += m.traffic[u].bytesReceived;
  }
  EXPECT_LE(received, sent);
  EXPECT_EQ(m.droppedByLoss, 0u);
}

TEST(Simulation, LossIsExplicit) {
  Scenario s = small(8, 30, 6);
  s.lossProb = 0.1;
  const RunMetrics m = run_scenario(s);
  EXPECT_GT(m.droppedByLoss, 0u);
}

TEST(Simulation, SameSeedSameBytes) {
  Scenario s = small(9, 32, 6);
  s.traceDigest = true;
  s.byzantineFraction = 1.0 / 32;
  const auto csv = [&] {
    const RunMetrics m = run_scenario(s);
    std::ostringstream out;
    write_deliveries_csv(out, m);
    write_summary_csv(out, m);
    return std::make_pair(out.str(), m.traceDigest);
  };
  const auto a = csv();
  const auto b = csv();
  EXPECT_EQ(a.first, b.first);
  ASSERT_TRUE(a.second.has_value());
  EXPECT_EQ(a.second, b.second);
  s.seed = 10;
  EXPECT_NE(csv().second, a.second);
}

TEST(Simulation, ProtocolsShareTheSetupForASeed) {
  Scenario s = small(12, 48, 6);
  s.byzantineFraction = 2.0 / 48;
  Simulation a(s);
  s.protocol = Protocol::kGossipsub;
  Simulation b(s);
  EXPECT_EQ(a.setup_digest(), b.setup_digest());
  EXPECT_EQ(a.topology().digest(), b.topology().digest());
  EXPECT_EQ(a.publishers(), b.publishers());
  EXPECT_EQ(a.byzantine(), b.byzantine());
  EXPECT_EQ(a.message_value(1), b.message_value(1));
  EXPECT_NE(a.optimum_node(0), nullptr);
  EXPECT_EQ(a.gossip_node(0), nullptr);
  EXPECT_NE(b.gossip_node(0), nullptr);
}

TEST(Simulation, RunsOnce) {
  Simulation sim(small(13));
  sim.run();
  EXPECT_THROW(sim.run(), Error);
}

TEST(Simulation, PollutersAreContained) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Scenario s = small(seed, 32, 6);
    s.byzantineFraction = 2.0 / 32;
    Simulation sim(s);
    const RunMetrics m = sim.run();
    EXPECT_EQ(m.integrityFailures, 0u);
    EXPECT_EQ(m.summarize().deliveryRatio, 1.0);
    for (std::size_t i = 0; i < s.n; ++i) {
      if (sim.byzantine()[i]) continue;
      for (const auto& a : sim.optimum_node(i)->accusations()) {
        EXPECT_TRUE(sim.byzantine()[index_of(a.accused)]);
      }
    }
  }
}

TEST(Simulation, MaterializedPrefixKeepsTiming) {
  Scenario full = small(14, 24, 4);
  full.messageSizeBytes = 65536;
  Scenario part = full;
  part.materializedBytes = 4096;
  Simulation a(full), b(part);
  EXPECT_EQ(a.message_value(0).size(), 65536u);
  EXPECT_EQ(b.message_value(0).size(), 4096u);
  const RunMetrics ma = a.run();
  const RunMetrics mb = b.run();
  // Logical sizes match, so quorum times agree to within coefficient-driven
  // differences in which shards turn out innovative.
  EXPECT_NEAR(ma.summarize().meanQuorumMs, mb.summarize().meanQuorumMs,
              0.25 * ma.summarize().meanQuorumMs);
}

TEST(Scenario, ParseRoundTrip) {
  std::istringstream in(R"(
# comment
seed = 5
protocol = gossipsub   # trailing comment
n = 50
D = 5
k = 16
r = 20
p = 3
publisherShards = mesh
tHeartbeatMs = 700
messageSizeBytes = 123456
materializedBytes = 1000
publishCount = 7
publishRatePerSec = 2.5
publishWindowSeconds = 4
byzantineFraction = 0.04
pollutionProb = 0.5
bandwidthClasses = 0.5:1e9:2e9, 0.5:5e7:6e7
latencyModel = uniform:5:25
horizonSeconds = 12
deliveryQuorum = 0.9
lossProb = 0.01
forwardCap = 9
rugby = false
traceDigest = true
sweep.axis = messageSize
)");
  const Scenario s = parse_scenario(in);
  EXPECT_EQ(s.seed, 5u);
  EXPECT_EQ(s.protocol, Protocol::kGossipsub);
  EXPECT_EQ(s.k, 16u);
  EXPECT_EQ(s.publisherShards, protocol::PublisherShards::kMeshDegree);
  EXPECT_EQ(s.effective_publish_count(), 10u);
  EXPECT_EQ(s.materialized_size(), 1000u);
  ASSERT_EQ(s.bandwidthClasses.size(), 2u);
  EXPECT_EQ(s.bandwidthClasses[0].downBps, 2e9);
  EXPECT_EQ(s.latency.hiMs, 25.0);
  EXPECT_FALSE(s.rugby);
  EXPECT_TRUE(s.traceDigest);
  const std::string text = to_config(s);
  std::istringstream again(text);
  EXPECT_EQ(to_config(parse_scenario(again)), text);
}

TEST(Scenario, DefaultRoundTrip) {
  const Scenario s;
  std::istringstream in(to_config(s));
  EXPECT_EQ(to_config(parse_scenario(in)), to_config(s));
}

TEST(Scenario, Errors) {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in, "test.cfg");
  };
  const auto code_of = [&](const std::string& text) {
    try {
      parse(text);
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "no error for: " << text;
    return ErrorCode::kZeroInverse;
  };
  EXPECT_EQ(code_of("bogus = 1"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("no equals sign"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("n = -3"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("k = 0"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("protocol = flood"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("bandwidthClasses = 0.5:1:1"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("bandwidthClasses = 1:0:1"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("latencyModel = gaussian:1:2"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("latencyModel = uniform:20:10"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("byzantineFraction = 1.5"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("n = 10\nbyzantineFraction = 1"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("publishRatePerSec = 0"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("rugby = maybe"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("n = 6\nD = 6"), ErrorCode::kInfeasibleDegree);
  try {
    parse("seed = 1\nhorizonSeconds = 0\n");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("horizonSeconds"), std::string::npos);
  }
  EXPECT_THROW(load_scenario("/nonexistent/scenario.cfg"), Error);
}

TEST(Metrics, StatisticsHelpers) {
  EXPECT_EQ(mean_of({}), 0.0);
  EXPECT_EQ(stddev_of({5.0}), 0.0);
  EXPECT_DOUBLE_EQ(mean_of({1, 2, 3, 4}), 2.5);
  EXPECT_DOUBLE_EQ(stddev_of({2, 4, 4, 4, 5, 5, 7, 9}), 2.0);
  EXPECT_EQ(fixed3(1.23456), "1.235");
  EXPECT_EQ(fixed3(-0.0004), "-0.000");
}

TEST(Metrics, SummaryArithmetic) {
  // Three nodes, node 0 publishes two messages.
  RunMetrics m;
  m.n = 3;
  m.deliveryQuorum = 1.0;
  m.traffic.assign(3, NodeTraffic{});
  m.traffic[0].bytesSent = 300;
  m.traffic[1].bytesSent = 60;
  m.traffic[1].redundantBytes = 30;
  m.traffic[2].controlMessagesSent = 4;
  m.byzantine.assign(3, false);
  for (std::size_t i = 0; i < 2; ++i) {
    MessageMetrics mm;
    mm.index = i;
    mm.publisher = peer(0);
    mm.publishedAt = std::chrono::milliseconds(1000 * i);
    mm.deliveredAt = {mm.publishedAt, mm.publishedAt + std::chrono::milliseconds(100),
                      i == 0 ? std::optional<Time>(mm.publishedAt + std::chrono::milliseconds(300))
                             : std::nullopt};
    if (i == 0) mm.quorumAt = *mm.deliveredAt[2];
    m.messages.push_back(mm);
  }
  const auto s = m.summarize();
  EXPECT_EQ(s.messages, 2u);
  EXPECT_EQ(s.expectedPairs, 4u);
  EXPECT_EQ(s.deliveredPairs, 3u);
  EXPECT_DOUBLE_EQ(s.deliveryRatio, 0.75);
  EXPECT_EQ(s.quorumReached, 1u);
  EXPECT_DOUBLE_EQ(s.meanQuorumMs, 300.0);
  EXPECT_DOUBLE_EQ(s.meanLatencyMs, (100.0 + 300.0 + 100.0) / 3);
  EXPECT_DOUBLE_EQ(s.maxLatencyMs, 300.0);
  EXPECT_DOUBLE_EQ(s.meanSpreadMs, 100.0);  // only message 0 has two deliveries
  EXPECT_EQ(s.totalBytes, 360u);
  EXPECT_DOUBLE_EQ(s.bytesPerNode, 120.0);
  EXPECT_DOUBLE_EQ(s.redundantBytesPerNode, 10.0);
  EXPECT_EQ(s.controlMessages, 4u);
}

TEST(Golden, CsvSchema) {
  EXPECT_EQ(summary_header() + "\n", read_file(GALOIS_TEST_DATA_DIR "/summary_header.csv"));
  RunMetrics empty;
  std::ostringstream out;
  write_deliveries_csv(out, empty);
  EXPECT_EQ(out.str(), read_file(GALOIS_TEST_DATA_DIR "/deliveries_header.csv"));
}

TEST(Golden, FixedScenarioOutput) {
  const Scenario s = load_scenario(GALOIS_TEST_DATA_DIR "/golden.cfg");
  const RunMetrics m = run_scenario(s);
  std::ostringstream deliveries, summary;
  write_deliveries_csv(deliveries, m);
  write_summary_csv(summary, m);
  EXPECT_EQ(deliveries.str(), read_file(GALOIS_TEST_DATA_DIR "/golden_deliveries.csv"));
  EXPECT_EQ(summary.str(), read_file(GALOIS_TEST_DATA_DIR "/golden_summary.csv"));
}

}  // namespace
}  // namespace galois::netsim
