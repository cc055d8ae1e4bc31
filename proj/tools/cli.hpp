#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace thermamp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalid = 2;

/// Parsed flags of one invocation. Unset optionals fall back to per-command
/// defaults.
struct RunConfig {
  std::string subcommand;
  std::optional<double> nbar;
  std::optional<double> gain;
  std::vector<int> m_values;
  std::string variant = "add";
  std::optional<long long> kmax;
  double tail_eps = 1e-12;
  std::optional<double> xmin, xmax, ymin, ymax;
  std::optional<long long> nx, ny;
  std::string format = "csv";
  std::optional<std::string> out;
  std::optional<std::string> sidecar;
  std::optional<std::string> preset;
  bool table1 = false;
  bool allow_formal = false;
  bool section = false;
  bool json = false;
  double fuzz = 0.0;
  unsigned threads = 0;
};

/// Runs the command line `args` (without the program name). Data goes to
/// --out or `out`; diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thermamp::cli
