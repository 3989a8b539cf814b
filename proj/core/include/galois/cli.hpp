// SPDX-License-Identifier: Apache-2.0
//
// The galois-sim command line, as a library entry point so tests drive it
// without a subprocess.
//
//   run <scenario>        single run: metrics.csv, summary.csv
//   sweep <sweepspec>     grid for one protocol: sweep.csv
//   compare <sweepspec>   grid for both protocols, paired seeds:
//                         compare.csv, compare_runs.csv, table on stdout
//   summarize <dir>       groups run CSVs: summary_table.csv, table on stdout
//
// Flags: --seed, --out <dir>, --protocol, --quiet, --jobs. The seed comes
// from --seed, else GG_SEED, else the file. Exit 0 on success, 2 on config
// or usage error, 1 on any other failure.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace galois::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

struct Environment {
  std::optional<std::string> seed;  // GG_SEED

  static Environment from_process();
};

/// `args` excludes the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
         const Environment& env = {});

}  // namespace galois::cli
