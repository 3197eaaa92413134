#pragma once

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace elab::cli {

struct RunConfig {
  std::string subcommand;
  int grid_n = 4096;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  std::string output_dir;  ///< empty: no files are written
  std::set<std::string> formats{"csv", "json", "svg"};
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. JSON results go to
/// `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace elab::cli
