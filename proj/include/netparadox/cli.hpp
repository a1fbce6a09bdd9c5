#pragma once

// Command implementations behind the `netparadox` tool. Kept out of main()
// so tests can run a command and inspect the files it wrote.

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "netparadox/null_models.hpp"

namespace netparadox::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
  std::string command;  ///< karate-demo | analyze | shuffle-test | statistical-origins

  std::string edges;
  std::vector<std::string> attrs;  ///< NAME=PATH
  std::string events;
  bool require_activity = false;

  std::uint64_t seed = 0;
  int bins_per_decade = 10;
  std::size_t runs = 10;
  std::string kind = "full";
  std::string format = "csv";
  std::string out = "out";
  int threads = 0;  ///< 0 = OpenMP default

  // statistical-origins
  std::vector<std::string> distributions{"exponential:2", "lognormal:-0.3,1.5", "pareto:1.2,1"};
  std::vector<std::size_t> sizes{1, 3, 10, 30, 100, 300, 1000};
  std::size_t trials = 10000;
  std::size_t nodes = 10000;
  std::string degree_dist = "pareto:1.2,1";
  std::string attr_dist = "pareto:1.2,1";
};

/// The resolved configuration as ordered key/value pairs. Only keys that the
/// command reads are listed.
std::vector<std::pair<std::string, std::string>> resolved_config(const RunConfig& cfg);

/// FNV-1a over the resolved configuration, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

struct RunResult {
  std::vector<std::string> files;     ///< paths written, in order
  std::vector<std::string> warnings;
  std::vector<std::string> summary;   ///< human-readable lines for stdout
};

RunResult karate_demo(const RunConfig& cfg);
RunResult analyze(const RunConfig& cfg);
RunResult shuffle_test(const RunConfig& cfg);
RunResult statistical_origins(const RunConfig& cfg);

/// Dispatches on cfg.command after validating the shared flags. Throws
/// ConfigError for bad or missing settings.
RunResult run(const RunConfig& cfg);

/// Parses arguments (argv[0] is the program name), runs the command and
/// reports to out/err. Returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// One-line JSON error record for stderr.
std::string error_record(const std::exception& e);

/// Process exit code for a failure: 2 config/usage, 3 bad input, 4 I/O, 1 other.
int exit_code_for(const std::exception& e);

}  // namespace netparadox::cli
