// SPDX-License-Identifier: Apache-2.0
#include "galois/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "galois/simulator.hpp"
#include "galois/sweep.hpp"

namespace galois::cli {
namespace {

namespace fs = std::filesystem;
using netsim::Protocol;

struct Options {
  std::string input;
  std::optional<std::string> seed;
  std::string outDir = ".";
  std::optional<std::string> protocol;
  bool quiet = false;
  std::size_t jobs = 0;
};

std::uint64_t parse_seed(const std::string& text, const char* origin) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') {
    throw Error(ErrorCode::kConfig, std::string(origin) + ": invalid seed '" + text + "'");
  }
  return v;
}

/// Flag beats environment beats file.
void apply_overrides(netsim::Scenario& s, const Options& o, const Environment& env) {
  if (o.seed) {
    s.seed = parse_seed(*o.seed, "--seed");
  } else if (env.seed) {
    s.seed = parse_seed(*env.seed, "GG_SEED");
  }
  if (o.protocol) {
    s.protocol = netsim::parse_protocol(*o.protocol);
  }
}

std::ofstream open_output(const Options& o, const std::string& name) {
  std::error_code ec;
  fs::create_directories(o.outDir, ec);
  const fs::path path = fs::path(o.outDir) / name;
  std::ofstream f(path);
  if (!f) {
    throw Error(ErrorCode::kConfig, "cannot write '" + path.string() + "'");
  }
  return f;
}

int cmd_run(const Options& o, const Environment& env, std::ostream& out) {
  netsim::Scenario s = netsim::load_scenario(o.input);
  apply_overrides(s, o, env);
  s.validate();
  const netsim::RunMetrics m = netsim::run_scenario(s);
  {
    auto f = open_output(o, "metrics.csv");
    netsim::write_deliveries_csv(f, m);
  }
  {
    auto f = open_output(o, "summary.csv");
    netsim::write_summary_csv(f, m);
  }
  if (!o.quiet) {
    out << netsim::summary_line(m) << '\n';
  }
  return kExitOk;
}

netsim::SweepSpec load_spec(const Options& o, const Environment& env) {
  netsim::SweepSpec spec = netsim::load_sweep(o.input);
  apply_overrides(spec.base, o, env);
  spec.validate();
  return spec;
}

netsim::SweepProgress progress_printer(const Options& o, std::ostream& out,
                                       netsim::SweepAxis axis) {
  if (o.quiet) {
    return {};
  }
  return [&out, axis](const netsim::SweepRun& r) {
    out << netsim::to_string(r.protocol) << ' ' << netsim::to_string(axis) << '='
        << netsim::fixed3(r.value) << " rep " << r.repetition << ": "
        << netsim::summary_line(r.metrics) << '\n';
  };
}

int cmd_sweep(const Options& o, const Environment& env, std::ostream& out) {
  const netsim::SweepSpec spec = load_spec(o, env);
  const auto runs =
      netsim::run_sweep(spec, {spec.base.protocol}, o.jobs, progress_printer(o, out, spec.axis));
  auto f = open_output(o, "sweep.csv");
  netsim::write_sweep_csv(f, spec.axis, runs);
  return kExitOk;
}

int cmd_compare(const Options& o, const Environment& env, std::ostream& out) {
  const netsim::SweepSpec spec = load_spec(o, env);
  const auto runs = netsim::run_sweep(spec, {Protocol::kOptimum, Protocol::kGossipsub}, o.jobs,
                                      progress_printer(o, out, spec.axis));
  const auto rows = netsim::compare_rows(spec, runs);
  {
    auto f = open_output(o, "compare.csv");
    netsim::write_compare_csv(f, spec.axis, rows);
  }
  {
    auto f = open_output(o, "compare_runs.csv");
    netsim::write_sweep_csv(f, spec.axis, runs);
  }
  if (!o.quiet) {
    netsim::write_compare_table(out, spec.axis, rows);
  }
  return kExitOk;
}

int cmd_summarize(const Options& o, std::ostream& out) {
  const auto groups = netsim::summarize_directory(o.input);
  {
    Options target;
    target.outDir = o.outDir == "." ? o.input : o.outDir;
    auto f = open_output(target, "summary_table.csv");
    netsim::write_summary_table_csv(f, groups);
  }
  if (!o.quiet) {
    netsim::write_summary_table_text(out, groups);
  }
  return kExitOk;
}

}  // namespace

Environment Environment::from_process() {
  Environment env;
  if (const char* s = std::getenv("GG_SEED"); s != nullptr && *s != '\0') {
    env.seed = s;
  }
  return env;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
         const Environment& env) {
  CLI::App app{"Gossip dissemination simulator: coded mesh relay versus full-message gossip",
               "galois-sim"};
  app.require_subcommand(1);
  Options o;
  const auto add_common = [&o](CLI::App* cmd, bool runsSimulations) {
    cmd->add_option("--out", o.outDir, "Output directory")->capture_default_str();
    cmd->add_flag("--quiet", o.quiet, "Suppress stdout output");
    if (runsSimulations) {
      cmd->add_option("--seed", o.seed, "Base seed (overrides GG_SEED and the file)");
      cmd->add_option("--protocol", o.protocol, "optimum | gossipsub");
      cmd->add_option("--jobs", o.jobs, "Worker threads for sweeps (0: one per core)");
    }
  };
  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("scenario", o.input, "Scenario file")->required();
  add_common(run, true);
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep for one protocol");
  sweep->add_option("sweepspec", o.input, "Sweep file")->required();
  add_common(sweep, true);
  CLI::App* compare = app.add_subcommand("compare", "Sweep both protocols on paired seeds");
  compare->add_option("sweepspec", o.input, "Sweep file")->required();
  add_common(compare, true);
  CLI::App* summarize = app.add_subcommand("summarize", "Aggregate run CSVs in a directory");
  summarize->add_option("dir", o.input, "Directory with run CSVs")->required();
  add_common(summarize, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) {
      return cmd_run(o, env, out);
    }
    if (sweep->parsed()) {
      return cmd_sweep(o, env, out);
    }
    if (compare->parsed()) {
      return cmd_compare(o, env, out);
    }
    return cmd_summarize(o, out);
  } catch (const Error& e) {
    err << "galois-sim: " << e.what() << '\n';
    const bool config = e.code() == ErrorCode::kConfig || e.code() == ErrorCode::kInfeasibleDegree ||
                        e.code() == ErrorCode::kBadParameters;
    return config ? kExitConfig : kExitFailure;
  } catch (const std::exception& e) {
    err << "galois-sim: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace galois::cli
