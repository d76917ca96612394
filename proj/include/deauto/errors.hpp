#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deauto {

// Two vectors that must share a length do not.
struct LengthMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// y[i] > 0 while the model value (x*x)[i] == 0, so the ratio y/yhat is undefined.
struct DegenerateRatioError : std::domain_error {
  std::size_t index;
  explicit DegenerateRatioError(std::size_t i)
      : std::domain_error("degenerate ratio at index " + std::to_string(i) +
                          ": data is positive where the model autoconvolution vanishes"),
        index(i) {}
};

// The system x_j * sum_{i<=n-j} x_i = r_j has no nonnegative solution (S^2 < 0,
// or S == 0 while some r_j > 0).
struct InfeasibleError : std::domain_error {
  using std::domain_error::domain_error;
};

// A closed-form (or recursive) denominator fell below the safe threshold.
struct DegenerateDenominatorError : std::domain_error {
  std::size_t index;
  DegenerateDenominatorError(std::size_t i, double value)
      : std::domain_error("degenerate denominator while solving for x[" + std::to_string(i) +
                          "]: value " + std::to_string(value)),
        index(i) {}
};

// Divergence is not finite at the initial iterate.
struct NonFiniteDivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A validation-mode identity exceeded its tolerance.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wraps a failure with the iteration at which it occurred.
struct IterationError : std::runtime_error {
  int iteration;
  IterationError(int t, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(t) + ": " + what), iteration(t) {}
};

}  // namespace deauto
