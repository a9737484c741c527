#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gtsfuse {

enum class Mode { Simulate, Features, Detect, Power, Table2 };

/// Every knob reachable from the command line; each subcommand reads the
/// subset it needs and validates it before doing any work.
struct RunConfig {
  Mode mode = Mode::Power;

  // model
  std::size_t n = 50;
  double p = 0.01;
  std::size_t m = 6;
  std::optional<double> q;  // defaults to p when absent
  std::vector<double> q_grid{0.2, 0.3, 0.4, 0.5};
  std::size_t t_star = 12;
  std::optional<std::size_t> t_max;  // defaults to t_star
  std::string model = "kappa";       // kappa | rdpg

  // statistics
  std::size_t ell = 5;
  double sigma_cap = 10.0;
  double alpha = 0.05;
  std::size_t replicates = 10000;
  std::string scheme = "adaptive";  // equal | adaptive | both
  std::string subset = "all";
  std::size_t best_of = 0;
  bool individual = false;
  std::optional<bool> vertex_standardize;  // off for power, on for real data
  bool cc_literal = false;
  bool normalized = false;  // features: emit S_i(t) instead of raw values
  std::uint64_t seed = 1;
  unsigned threads = 0;

  // io
  std::string input;
  std::string labels;
  std::string out;
  std::string format = "csv";
};

/// Resolved configuration as a JSON object string (deterministic key order).
std::string config_json(const RunConfig& cfg);

/**
 * Entry point behind the `gtsfuse` executable.
 * Returns 0 on success, 1 on usage errors, 2 on runtime errors.
 */
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gtsfuse
