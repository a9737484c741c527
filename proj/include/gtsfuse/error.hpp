#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gtsfuse {

// Malformed or out-of-range input data (edge lists, vertex indices).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter violates a documented precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Power iteration did not reach the requested residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double residual,
                   std::vector<double> last_iterate)
      : std::runtime_error(what),
        estimate_(estimate),
        residual_(residual),
        last_iterate_(std::move(last_iterate)) {}

  double estimate() const noexcept { return estimate_; }
  double residual() const noexcept { return residual_; }
  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  double estimate_;
  double residual_;
  std::vector<double> last_iterate_;
};

}  // namespace gtsfuse
