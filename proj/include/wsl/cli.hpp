#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wsl::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kSchemaViolation = 2,
  kDomainError = 3,
};

struct CommandConfig {
  /// distance | potential | deconvolve | interpolate | bisector-mass | verify
  std::string subcommand;
  double p = 2.0;
  double alpha = 0.5;
  int grid_n = 64;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  /// Empty writes to the output stream passed to run().
  std::string output;
  /// json | csv; empty picks the subcommand's natural format.
  std::string format;
  /// Comma-separated coordinates of the pole for bisector-mass.
  std::string x;
  /// Pole angle on S^1, alternative to x.
  std::optional<double> theta;
  /// CSV of evaluation sites (header x1,...,xk) for potential off S^1.
  std::string sites;
  /// Trials of the translation identity inside verify.
  int trials = 50;

  /// Throws SchemaError when an invariant (p >= 1, alpha in [0, 1], grid_n >= 4, ...) fails.
  void validate() const;
};

/// Executes one command. Diagnostics go to `err` as a JSON object.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs the command.
int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wsl::cli
