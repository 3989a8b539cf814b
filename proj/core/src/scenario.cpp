// SPDX-License-Identifier: Apache-2.0
#include "galois/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace galois::netsim {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::kConfig, key + ": " + why);
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size() || d < 0 || d != std::floor(d) || d > 1.8e19) {
      bad(key, "expected a non-negative integer, got '" + value + "'");
    }
    return static_cast<std::uint64_t>(d);
  } catch (const std::logic_error&) {
    bad(key, "expected a non-negative integer, got '" + value + "'");
  }
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(d)) {
      bad(key, "expected a number, got '" + value + "'");
    }
    return d;
  } catch (const std::logic_error&) {
    bad(key, "expected a number, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  bad(key, "expected a boolean, got '" + value + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    out.push_back(trim(item));
  }
  return out;
}

std::string number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

const char* to_string(Protocol p) noexcept {
  return p == Protocol::kOptimum ? "optimum" : "gossipsub";
}

Protocol parse_protocol(const std::string& text) {
  if (text == "optimum") return Protocol::kOptimum;
  if (text == "gossipsub") return Protocol::kGossipsub;
  throw Error(ErrorCode::kConfig, "protocol: expected optimum or gossipsub, got '" + text + "'");
}

std::size_t Scenario::effective_publish_count() const {
  if (publishWindowSeconds > 0) {
    return static_cast<std::size_t>(std::ceil(publishRatePerSec * publishWindowSeconds - 1e-9));
  }
  return publishCount;
}

std::uint64_t Scenario::materialized_size() const {
  return materializedBytes == 0 ? messageSizeBytes : std::min(materializedBytes, messageSizeBytes);
}

void Scenario::validate() const {
  if (n < 2) bad("n", "need at least 2 nodes");
  if (D == 0) bad("D", "must be positive");
  if (D >= n) throw Error(ErrorCode::kInfeasibleDegree, "D must be smaller than n");
  if (k == 0 || k > 0xFFFF) bad("k", "must be in [1, 65535]");
  if (tHeartbeatMs <= 0) bad("tHeartbeatMs", "must be positive");
  if (messageSizeBytes == 0) bad("messageSizeBytes", "must be positive");
  if (publishRatePerSec <= 0) bad("publishRatePerSec", "must be positive");
  if (publishWindowSeconds < 0) bad("publishWindowSeconds", "must be non-negative");
  if (byzantineFraction < 0 || byzantineFraction > 1) bad("byzantineFraction", "must be in [0,1]");
  if (pollutionProb < 0 || pollutionProb > 1) bad("pollutionProb", "must be in [0,1]");
  if (deliveryQuorum <= 0 || deliveryQuorum > 1) bad("deliveryQuorum", "must be in (0,1]");
  if (lossProb < 0 || lossProb >= 1) bad("lossProb", "must be in [0,1)");
  if (horizonSeconds <= 0) bad("horizonSeconds", "must be positive");
  if (bandwidthClasses.empty()) bad("bandwidthClasses", "need at least one class");
  double total = 0;
  for (const auto& c : bandwidthClasses) {
    if (c.fraction < 0 || c.fraction > 1) bad("bandwidthClasses", "fraction must be in [0,1]");
    if (c.upBps <= 0 || c.downBps <= 0) bad("bandwidthClasses", "rates must be positive");
    total += c.fraction;
  }
  if (std::abs(total - 1.0) > 1e-6) bad("bandwidthClasses", "fractions must sum to 1");
  if (latency.kind == LatencyModel::Kind::kUniform &&
      (latency.loMs < 0 || latency.hiMs < latency.loMs)) {
    bad("latencyModel", "need 0 <= lo <= hi");
  }
  const auto byzantine = static_cast<std::size_t>(std::llround(byzantineFraction * static_cast<double>(n)));
  if (byzantine >= n) bad("byzantineFraction", "publisher can never be Byzantine");
}

void apply_setting(Scenario& s, const std::string& key, const std::string& value) {
  if (key == "seed") s.seed = to_uint(key, value);
  else if (key == "protocol") s.protocol = parse_protocol(value);
  else if (key == "n") s.n = to_uint(key, value);
  else if (key == "D") s.D = to_uint(key, value);
  else if (key == "k") s.k = to_uint(key, value);
  else if (key == "r") s.r = to_uint(key, value);
  else if (key == "p") s.p = to_uint(key, value);
  else if (key == "publisherShards") {
    if (value == "multiplier") s.publisherShards = protocol::PublisherShards::kMultiplier;
    else if (value == "mesh") s.publisherShards = protocol::PublisherShards::kMeshDegree;
    else bad(key, "expected multiplier or mesh");
  }
  else if (key == "tHeartbeatMs") s.tHeartbeatMs = to_double(key, value);
  else if (key == "messageSizeBytes") s.messageSizeBytes = to_uint(key, value);
  else if (key == "materializedBytes") s.materializedBytes = to_uint(key, value);
  else if (key == "publishCount") s.publishCount = to_uint(key, value);
  else if (key == "publishRatePerSec") s.publishRatePerSec = to_double(key, value);
  else if (key == "publishWindowSeconds") s.publishWindowSeconds = to_double(key, value);
  else if (key == "byzantineFraction") s.byzantineFraction = to_double(key, value);
  else if (key == "pollutionProb") s.pollutionProb = to_double(key, value);
  else if (key == "bandwidthClasses") {
    s.bandwidthClasses.clear();
    for (const auto& item : split(value, ',')) {
      const auto parts = split(item, ':');
      if (parts.size() != 3) bad(key, "each class is fraction:upBps:downBps");
      s.bandwidthClasses.push_back(
          {to_double(key, parts[0]), to_double(key, parts[1]), to_double(key, parts[2])});
    }
  }
  else if (key == "latencyModel") {
    const auto colon = value.find(':');
    const std::string kind = value.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : value.substr(colon + 1);
    if (kind == "uniform") {
      const auto parts = split(rest, ':');
      if (parts.size() != 2) bad(key, "expected uniform:loMs:hiMs");
      s.latency = LatencyModel{LatencyModel::Kind::kUniform, to_double(key, parts[0]),
                               to_double(key, parts[1]), ""};
    } else if (kind == "matrix") {
      if (rest.empty()) bad(key, "expected matrix:<path>");
      s.latency = LatencyModel{LatencyModel::Kind::kMatrix, 0, 0, rest};
    } else {
      bad(key, "expected uniform:lo:hi or matrix:path");
    }
  }
  else if (key == "horizonSeconds") s.horizonSeconds = to_double(key, value);
  else if (key == "deliveryQuorum") s.deliveryQuorum = to_double(key, value);
  else if (key == "lossProb") s.lossProb = to_double(key, value);
  else if (key == "forwardCap") s.forwardCap = to_uint(key, value);
  else if (key == "rugby") s.rugby = to_bool(key, value);
  else if (key == "traceDigest") s.traceDigest = to_bool(key, value);
  else throw Error(ErrorCode::kConfig, "unknown key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> parse_pairs(std::istream& in,
                                                             const std::string& origin) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig,
                  origin + ":" + std::to_string(number) + ": expected key = value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

Scenario parse_scenario(std::istream& in, const std::string& origin) {
  Scenario s;
  for (const auto& [key, value] : parse_pairs(in, origin)) {
    if (key.rfind("sweep.", 0) == 0) {
      continue;
    }
    apply_setting(s, key, value);
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kConfig, "cannot read scenario file '" + path + "'");
  }
  return parse_scenario(in, path);
}

std::string to_config(const Scenario& s) {
  std::ostringstream out;
  out << "seed = " << s.seed << "\n"
      << "protocol = " << to_string(s.protocol) << "\n"
      << "n = " << s.n << "\n"
      << "D = " << s.D << "\n"
      << "k = " << s.k << "\n"
      << "r = " << s.r << "\n"
      << "p = " << s.p << "\n"
      << "publisherShards = "
      << (s.publisherShards == protocol::PublisherShards::kMeshDegree ? "mesh" : "multiplier")
      << "\n"
      << "tHeartbeatMs = " << number(s.tHeartbeatMs) << "\n"
      << "messageSizeBytes = " << s.messageSizeBytes << "\n"
      << "materializedBytes = " << s.materializedBytes << "\n"
      << "publishCount = " << s.publishCount << "\n"
      << "publishRatePerSec = " << number(s.publishRatePerSec) << "\n"
      << "publishWindowSeconds = " << number(s.publishWindowSeconds) << "\n"
      << "byzantineFraction = " << number(s.byzantineFraction) << "\n"
      << "pollutionProb = " << number(s.pollutionProb) << "\n"
      << "bandwidthClasses = ";
  for (std::size_t i = 0; i < s.bandwidthClasses.size(); ++i) {
    const auto& c = s.bandwidthClasses[i];
    out << (i ? "," : "") << number(c.fraction) << ":" << number(c.upBps) << ":"
        << number(c.downBps);
  }
  out << "\nlatencyModel = ";
  if (s.latency.kind == LatencyModel::Kind::kUniform) {
    out << "uniform:" << number(s.latency.loMs) << ":" << number(s.latency.hiMs);
  } else {
    out << "matrix:" << s.latency.matrixPath;
  }
  out << "\nhorizonSeconds = " << number(s.horizonSeconds) << "\n"
      << "deliveryQuorum = " << number(s.deliveryQuorum) << "\n"
      << "lossProb = " << number(s.lossProb) << "\n"
      << "forwardCap = " << s.forwardCap << "\n"
      << "rugby = " << (s.rugby ? "true" : "false") << "\n"
      << "traceDigest = " << (s.traceDigest ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace galois::netsim
