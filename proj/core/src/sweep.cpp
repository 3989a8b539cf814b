// SPDX-License-Identifier: Apache-2.0
#include "galois/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace galois::netsim {
namespace {

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kConfig, key + ": expected a number, got '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cur.substr(b, e - b + 1));
  }
  return out;
}

double ms(Time t) { return static_cast<double>(t.count()) / 1e6; }

}  // namespace

const char* to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::kMessageSize:
      return "messageSize";
    case SweepAxis::kPublishRate:
      return "publishRate";
    case SweepAxis::kByzantineFraction:
      return "byzantineFraction";
  }
  return "?";
}

SweepAxis parse_axis(const std::string& text) {
  for (const auto a : {SweepAxis::kMessageSize, SweepAxis::kPublishRate,
                       SweepAxis::kByzantineFraction}) {
    if (text == to_string(a)) {
      return a;
    }
  }
  throw Error(ErrorCode::kConfig, "sweep.axis: unknown axis '" + text + "'");
}

void SweepSpec::validate() const {
  if (values.empty()) {
    throw Error(ErrorCode::kConfig, "sweep.values: at least one value required");
  }
  if (repetitions == 0) {
    throw Error(ErrorCode::kConfig, "sweep.repetitions: must be at least 1");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    sweep_point(*this, i, 0, base.protocol).validate();
  }
}

SweepSpec parse_sweep(std::istream& in, const std::string& origin) {
  SweepSpec spec;
  bool haveAxis = false;
  for (const auto& [key, value] : parse_pairs(in, origin)) {
    if (key == "sweep.axis") {
      spec.axis = parse_axis(value);
      haveAxis = true;
    } else if (key == "sweep.values") {
      spec.values.clear();
      for (const auto& item : split(value, ',')) {
        spec.values.push_back(parse_number(key, item));
      }
    } else if (key == "sweep.repetitions") {
      const double reps = parse_number(key, value);
      if (reps < 1 || reps != std::floor(reps)) {
        throw Error(ErrorCode::kConfig, "sweep.repetitions: must be a positive integer");
      }
      spec.repetitions = static_cast<std::size_t>(reps);
    } else if (key.rfind("sweep.", 0) == 0) {
      throw Error(ErrorCode::kConfig, origin + ": unknown key '" + key + "'");
    } else {
      apply_setting(spec.base, key, value);
    }
  }
  if (!haveAxis) {
    throw Error(ErrorCode::kConfig, origin + ": sweep.axis is required");
  }
  spec.base.validate();
  spec.validate();
  return spec;
}

SweepSpec load_sweep(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kConfig, "cannot read sweep file '" + path + "'");
  }
  return parse_sweep(in, path);
}

std::uint64_t repetition_seed(std::uint64_t baseSeed, std::size_t repetition) {
  return mix_seed(baseSeed, repetition);
}

Scenario sweep_point(const SweepSpec& spec, std::size_t valueIndex, std::size_t repetition,
                     Protocol protocol) {
  Scenario s = spec.base;
  s.protocol = protocol;
  s.seed = repetition_seed(spec.base.seed, repetition);
  const double v = spec.values.at(valueIndex);
  switch (spec.axis) {
    case SweepAxis::kMessageSize:
      if (v < 1 || v != std::floor(v)) {
        throw Error(ErrorCode::kConfig, "sweep.values: message sizes must be positive integers");
      }
      s.messageSizeBytes = static_cast<std::uint64_t>(v);
      break;
    case SweepAxis::kPublishRate:
      s.publishRatePerSec = v;
      break;
    case SweepAxis::kByzantineFraction:
      s.byzantineFraction = v;
      break;
  }
  return s;
}

std::vector<SweepRun> run_sweep(const SweepSpec& spec, const std::vector<Protocol>& protocols,
                                std::size_t workers, const SweepProgress& progress) {
  std::vector<SweepRun> runs;
  for (const Protocol p : protocols) {
    for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
      for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
        SweepRun r;
        r.protocol = p;
        r.valueIndex = vi;
        r.value = spec.values[vi];
        r.repetition = rep;
        runs.push_back(std::move(r));
      }
    }
  }
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, runs.size());

  // Workers fill disjoint slots; the caller thread reports completions in
  // grid order and owns every side effect.
  std::vector<std::exception_ptr> errors(runs.size());
  std::vector<bool> done(runs.size(), false);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= runs.size()) {
        return;
      }
      if (!abort.load()) {
        try {
          SweepRun& r = runs[i];
          r.metrics = run_scenario(sweep_point(spec, r.valueIndex, r.repetition, r.protocol));
        } catch (...) {
          errors[i] = std::current_exception();
          abort.store(true);
        }
      }
      {
        std::lock_guard lock(mu);
        done[i] = true;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(work);
  }
  std::exception_ptr failure;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return done[i]; });
    }
    if (errors[i] && !failure) {
      failure = errors[i];
    }
    if (!failure && !abort.load() && progress) {
      progress(runs[i]);
    }
  }
  for (auto& t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return runs;
}

std::string sweep_header() { return "axis,value,repetition," + summary_header(); }

void write_sweep_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepRun>& runs) {
  out << sweep_header() << '\n';
  for (const auto& r : runs) {
    out << to_string(axis) << ',' << fixed3(r.value) << ',' << r.repetition << ','
        << summary_row(r.metrics) << '\n';
  }
}

PooledStats pool(const std::vector<const RunMetrics*>& runs) {
  PooledStats s;
  s.runs = runs.size();
  std::vector<double> quorum;
  std::vector<double> latency;
  std::size_t delivered = 0;
  std::size_t expected = 0;
  double redundant = 0;
  for (const RunMetrics* m : runs) {
    const auto sum = m->summarize();
    delivered += sum.deliveredPairs;
    expected += sum.expectedPairs;
    redundant += sum.redundantBytesPerNode;
    s.messages += m->messages.size();
    for (const auto& msg : m->messages) {
      if (msg.quorumAt) {
        quorum.push_back(ms(*msg.quorumAt - msg.publishedAt));
      }
      for (std::size_t v = 0; v < msg.deliveredAt.size(); ++v) {
        if (v == to_u64(msg.publisher) || (v < m->byzantine.size() && m->byzantine[v])) {
          continue;
        }
        if (msg.deliveredAt[v]) {
          latency.push_back(ms(*msg.deliveredAt[v] - msg.publishedAt));
        }
      }
    }
  }
  s.quorumReached = quorum.size();
  s.meanQuorumMs = mean_of(quorum);
  s.stdQuorumMs = stddev_of(quorum);
  s.meanLatencyMs = mean_of(latency);
  s.stdLatencyMs = stddev_of(latency);
  s.deliveryRatio =
      expected == 0 ? 1.0 : static_cast<double>(delivered) / static_cast<double>(expected);
  s.redundantBytesPerNode = runs.empty() ? 0 : redundant / static_cast<double>(runs.size());
  return s;
}

std::vector<CompareRow> compare_rows(const SweepSpec& spec, const std::vector<SweepRun>& runs) {
  std::vector<CompareRow> rows;
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    std::vector<const RunMetrics*> opt;
    std::vector<const RunMetrics*> gs;
    for (const auto& r : runs) {
      if (r.valueIndex != vi) {
        continue;
      }
      (r.protocol == Protocol::kOptimum ? opt : gs).push_back(&r.metrics);
    }
    rows.push_back(CompareRow{spec.values[vi], pool(opt), pool(gs)});
  }
  return rows;
}

void write_compare_csv(std::ostream& out, SweepAxis axis, const std::vector<CompareRow>& rows) {
  out << "axis,value";
  for (const char* p : {"optimum", "gossipsub"}) {
    out << ',' << p << "_runs," << p << "_mean_quorum_ms," << p << "_std_quorum_ms," << p
        << "_delivery_ratio," << p << "_mean_latency_ms," << p << "_std_latency_ms," << p
        << "_redundant_bytes_per_node";
  }
  out << ",quorum_ratio\n";
  for (const auto& row : rows) {
    out << to_string(axis) << ',' << fixed3(row.value);
    for (const PooledStats* s : {&row.optimum, &row.gossipsub}) {
      out << ',' << s->runs << ',' << fixed3(s->meanQuorumMs) << ',' << fixed3(s->stdQuorumMs)
          << ',' << fixed3(s->deliveryRatio) << ',' << fixed3(s->meanLatencyMs) << ','
          << fixed3(s->stdLatencyMs) << ',' << fixed3(s->redundantBytesPerNode);
    }
    const double ratio =
        row.gossipsub.meanQuorumMs > 0 ? row.optimum.meanQuorumMs / row.gossipsub.meanQuorumMs : 0;
    out << ',' << fixed3(ratio) << '\n';
  }
}

void write_compare_table(std::ostream& out, SweepAxis axis, const std::vector<CompareRow>& rows) {
  char line[256];
  std::snprintf(line, sizeof line, "%-18s | %-29s | %-29s\n", to_string(axis),
                "optimum quorum ms (std) ratio", "gossipsub quorum ms (std) ratio");
  out << line;
  out << std::string(82, '-') << '\n';
  for (const auto& row : rows) {
    std::snprintf(line, sizeof line, "%-18.3f | %9.1f (%8.1f) %8.3f | %9.1f (%8.1f) %8.3f\n",
                  row.value, row.optimum.meanQuorumMs, row.optimum.stdQuorumMs,
                  row.optimum.deliveryRatio, row.gossipsub.meanQuorumMs,
                  row.gossipsub.stdQuorumMs, row.gossipsub.deliveryRatio);
    out << line;
  }
}

std::vector<SummaryGroup> summarize_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kConfig, "not a directory: '" + dir + "'");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv" &&
        entry.path().filename() != "summary_table.csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  struct Acc {
    std::vector<double> quorum, latency, latencyStd, ratio;
  };
  std::map<std::tuple<std::string, std::string, std::string, std::string>, Acc> groups;
  const std::vector<std::string> needed = {"protocol",       "message_size",   "publish_rate",
                                           "byzantine_fraction", "mean_quorum_ms",
                                           "mean_latency_ms", "std_latency_ms", "delivery_ratio",
                                           "quorum_reached"};
  for (const auto& path : files) {
    std::ifstream in(path);
    std::string line;
    if (!std::getline(in, line)) {
      continue;
    }
    const auto header = split(line, ',');
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) {
      col[header[i]] = i;
    }
    if (!std::all_of(needed.begin(), needed.end(),
                     [&](const std::string& c) { return col.count(c) != 0; })) {
      continue;
    }
    while (std::getline(in, line)) {
      if (line.empty()) {
        continue;
      }
      const auto f = split(line, ',');
      if (f.size() != header.size()) {
        throw Error(ErrorCode::kConfig, path.string() + ": ragged row");
      }
      const auto get = [&](const char* name) {
        return parse_number(path.string() + ":" + name, f[col[name]]);
      };
      Acc& a = groups[{f[col["protocol"]], f[col["message_size"]], f[col["publish_rate"]],
                       f[col["byzantine_fraction"]]}];
      if (get("quorum_reached") > 0) {
        a.quorum.push_back(get("mean_quorum_ms"));
      }
      a.latency.push_back(get("mean_latency_ms"));
      a.latencyStd.push_back(get("std_latency_ms"));
      a.ratio.push_back(get("delivery_ratio"));
    }
  }
  if (groups.empty()) {
    throw Error(ErrorCode::kConfig, "no run CSV files with summary columns in '" + dir + "'");
  }
  std::vector<SummaryGroup> out;
  for (const auto& [key, a] : groups) {
    SummaryGroup g;
    std::tie(g.protocol, g.messageSize, g.publishRate, g.byzantineFraction) = key;
    g.runs = a.ratio.size();
    g.meanQuorumMs = mean_of(a.quorum);
    g.stdQuorumMs = stddev_of(a.quorum);
    g.meanLatencyMs = mean_of(a.latency);
    g.stdLatencyMs = mean_of(a.latencyStd);
    g.deliveryRatio = mean_of(a.ratio);
    out.push_back(std::move(g));
  }
  return out;
}

void write_summary_table_csv(std::ostream& out, const std::vector<SummaryGroup>& groups) {
  out << "protocol,message_size,publish_rate,byzantine_fraction,runs,mean_quorum_ms,"
         "std_quorum_ms,mean_latency_ms,std_latency_ms,delivery_ratio\n";
  for (const auto& g : groups) {
    out << g.protocol << ',' << g.messageSize << ',' << g.publishRate << ','
        << g.byzantineFraction << ',' << g.runs << ',' << fixed3(g.meanQuorumMs) << ','
        << fixed3(g.stdQuorumMs) << ',' << fixed3(g.meanLatencyMs) << ','
        << fixed3(g.stdLatencyMs) << ',' << fixed3(g.deliveryRatio) << '\n';
  }
}

void write_summary_table_text(std::ostream& out, const std::vector<SummaryGroup>& groups) {
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %12s %8s %6s %5s %12s %10s %12s %10s %8s\n",
                "protocol", "size", "rate", "byz", "runs", "quorum_ms", "std", "latency_ms",
                "std", "ratio");
  out << line;
  for (const auto& g : groups) {
    std::snprintf(line, sizeof line, "%-10s %12s %8s %6s %5zu %12.1f %10.1f %12.1f %10.1f %8.3f\n",
                  g.protocol.c_str(), g.messageSize.c_str(), g.publishRate.c_str(),
                  g.byzantineFraction.c_str(), g.runs, g.meanQuorumMs, g.stdQuorumMs,
                  g.meanLatencyMs, g.stdLatencyMs, g.deliveryRatio);
    out << line;
  }
}

}  // namespace galois::netsim
