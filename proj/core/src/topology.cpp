// SPDX-License-Identifier: Apache-2.0
#include "galois/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace galois::netsim {
namespace {

constexpr int kMaxAttempts = 200;

using Adjacency = std::vector<std::set<std::size_t>>;

bool connected(const Adjacency& adj) {
  if (adj.empty()) {
    return true;
  }
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (const std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == adj.size();
}

void link(Adjacency& adj, std::size_t a, std::size_t b) {
  adj[a].insert(b);
  adj[b].insert(a);
}

// Picks a uniform partner for u among nodes passing `ok`, or returns n.
template <typename Pred>
std::size_t pick(const Adjacency& adj, std::size_t u, Rng& rng, Pred ok) {
  std::vector<std::size_t> candidates;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (v != u && adj[u].count(v) == 0 && ok(v)) {
      candidates.push_back(v);
    }
  }
  if (candidates.empty()) {
    return adj.size();
  }
  return candidates[uniform_below(rng, candidates.size())];
}

bool try_mesh(std::size_t n, std::size_t D, std::size_t lo, std::size_t hi, Rng& rng,
              Adjacency& adj) {
  adj.assign(n, {});
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
  }
  for (std::size_t round = 0; round < D; ++round) {
    shuffle(order, rng);
    for (const std::size_t u : order) {
      if (adj[u].size() >= D) {
        continue;
      }
      const std::size_t v = pick(adj, u, rng, [&](std::size_t w) { return adj[w].size() < D; });
      if (v < n) {
        link(adj, u, v);
      }
    }
  }
  for (const std::size_t u : order) {
    while (adj[u].size() < lo) {
      const std::size_t v = pick(adj, u, rng, [&](std::size_t w) { return adj[w].size() < hi; });
      if (v == n) {
        return false;
      }
      link(adj, u, v);
    }
  }
  return connected(adj);
}

std::vector<PeerId> to_peers(const std::set<std::size_t>& s) {
  std::vector<PeerId> out;
  out.reserve(s.size());
  for (const std::size_t v : s) {
    out.push_back(peer(v));
  }
  return out;
}

}  // namespace

bool Topology::is_connected_mesh() const {
  Adjacency adj(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (const PeerId v : mesh[u]) {
      adj[u].insert(static_cast<std::size_t>(to_u64(v)));
    }
  }
  return connected(adj);
}

crypto::Digest Topology::digest() const {
  crypto::Keccak256 h;
  const auto put = [&h](std::uint64_t v) {
    std::uint8_t buf[8];
    for (int i = 0; i < 8; ++i) {
      buf[i] = static_cast<std::uint8_t>(v >> (56 - 8 * i));
    }
    h.update(ByteView(buf, 8));
  };
  const auto put_double = [&put](double d) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &d, sizeof bits);
    put(bits);
  };
  put(n);
  for (std::size_t u = 0; u < n; ++u) {
    put(neighbors[u].size());
    for (const PeerId v : neighbors[u]) put(to_u64(v));
    put(mesh[u].size());
    for (const PeerId v : mesh[u]) put(to_u64(v));
    put_double(upBps[u]);
    put_double(downBps[u]);
  }
  for (const double l : latencyMs) put_double(l);
  return h.finish();
}

std::size_t top_bandwidth_class(const Scenario& scenario) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scenario.bandwidthClasses.size(); ++i) {
    const auto& c = scenario.bandwidthClasses[i];
    const auto& b = scenario.bandwidthClasses[best];
    if (std::min(c.upBps, c.downBps) > std::min(b.upBps, b.downBps)) {
      best = i;
    }
  }
  return best;
}

std::vector<double> load_latency_matrix(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kConfig, "cannot read latency matrix '" + path + "'");
  }
  std::vector<double> out;
  out.reserve(n * n);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    std::size_t cols = 0;
    while (std::getline(cells, cell, ',')) {
      try {
        const double v = std::stod(cell);
        if (!(v >= 0)) {
          throw std::invalid_argument("negative");
        }
        out.push_back(v);
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::kConfig, path + ": bad latency '" + cell + "'");
      }
      ++cols;
    }
    if (cols != n) {
      throw Error(ErrorCode::kConfig, path + ": row " + std::to_string(rows + 1) + " has " +
                                          std::to_string(cols) + " columns, expected " +
                                          std::to_string(n));
    }
    ++rows;
  }
  if (rows != n) {
    throw Error(ErrorCode::kConfig, path + ": expected " + std::to_string(n) + " rows");
  }
  return out;
}

Topology build_topology(const Scenario& scenario, Rng& rng) {
  const std::size_t n = scenario.n;
  const std::size_t D = scenario.D;
  if (n < 2 || D >= n || D == 0) {
    throw Error(ErrorCode::kInfeasibleDegree, "need 0 < D < n");
  }
  const std::size_t lo = std::min<std::size_t>(4, D);
  const std::size_t hi = std::min(std::max<std::size_t>(12, D), n - 1);

  Adjacency mesh;
  bool ok = false;
  for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
    ok = try_mesh(n, D, lo, hi, rng, mesh);
  }
  if (!ok) {
    throw Error(ErrorCode::kInfeasibleDegree,
                "no connected mesh with degree in [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "] after " + std::to_string(kMaxAttempts) + " attempts");
  }

  Adjacency adj = mesh;
  const std::size_t targetDegree = std::min(2 * D, n - 1);
  std::size_t edges = 0;
  for (const auto& s : adj) edges += s.size();
  edges /= 2;
  const std::size_t targetEdges = (targetDegree * n + 1) / 2;
  const std::size_t maxEdges = n * (n - 1) / 2;
  while (edges < std::min(targetEdges, maxEdges)) {
    const std::size_t u = uniform_below(rng, n);
    const std::size_t v = uniform_below(rng, n);
    if (u != v && adj[u].count(v) == 0) {
      link(adj, u, v);
      ++edges;
    }
  }

  Topology t;
  t.n = n;
  for (std::size_t u = 0; u < n; ++u) {
    t.neighbors.push_back(to_peers(adj[u]));
    t.mesh.push_back(to_peers(mesh[u]));
  }

  if (scenario.latency.kind == LatencyModel::Kind::kMatrix) {
    t.latencyMs = load_latency_matrix(scenario.latency.matrixPath, n);
  } else {
    t.latencyMs.assign(n * n, 0.0);
    const double span = scenario.latency.hiMs - scenario.latency.loMs;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        const double l = scenario.latency.loMs + span * uniform_unit(rng);
        t.latencyMs[u * n + v] = l;
        t.latencyMs[v * n + u] = l;
      }
    }
  }

  std::vector<std::size_t> counts;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < scenario.bandwidthClasses.size(); ++i) {
    std::size_t c = static_cast<std::size_t>(
        std::llround(scenario.bandwidthClasses[i].fraction * static_cast<double>(n)));
    if (i + 1 == scenario.bandwidthClasses.size() || assigned + c > n) {
      c = n - assigned;
    }
    counts.push_back(c);
    assigned += c;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  shuffle(order, rng);
  t.bandwidthClass.assign(n, 0);
  std::size_t next = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    for (std::size_t j = 0; j < counts[c]; ++j) {
      t.bandwidthClass[order[next++]] = c;
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    const auto& cls = scenario.bandwidthClasses[t.bandwidthClass[u]];
    t.upBps.push_back(cls.upBps);
    t.downBps.push_back(cls.downBps);
  }
  return t;
}

}  // namespace galois::netsim
