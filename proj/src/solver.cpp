#include "deauto/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "deauto/errors.hpp"

namespace deauto::solver {

namespace {

// Running product of ratios num/den. Above kLogSpaceThreshold the magnitudes
// accumulate in log space so long chains cannot under/overflow.
class RatioProduct {
 public:
  explicit RatioProduct(bool log_space) : log_space_(log_space) {}

  void multiply(double num, double den) {
    if (zero_) return;
    if (num == 0.0) {
      zero_ = true;
      return;
    }
    if (log_space_) {
      log_magnitude_ += std::log(std::abs(num)) - std::log(den);
      if (num < 0.0) negative_ = !negative_;
    } else {
      value_ *= num / den;
    }
  }

  // base * product, with base >= 0.
  double apply(double base) const {
    if (zero_ || base == 0.0) return 0.0;
    if (!log_space_) return base * value_;
    const double magnitude = std::exp(std::log(base) + log_magnitude_);
    return negative_ ? -magnitude : magnitude;
  }

 private:
  bool log_space_;
  double value_ = 1.0;
  double log_magnitude_ = 0.0;
  bool negative_ = false;
  bool zero_ = false;
};

void check_denominator(double den, std::size_t solving_for, double eps) {
  if (!(den > eps)) throw DegenerateDenominatorError(solving_for, den);
}

Solution finish(const Input& input, std::vector<double> x) {
  const std::size_t len = input.n + 1;
  // T_j = sum_{i=0}^{n-j} x_i via one prefix-sum pass.
  std::vector<double> partial(len + 1, 0.0);
  for (std::size_t i = 0; i < len; ++i) partial[i + 1] = partial[i] + x[i];
  Solution out;
  out.residuals.resize(len);
  for (std::size_t j = 0; j < len; ++j) {
    out.residuals[j] = std::abs(x[j] * partial[len - j] - input.r[j]);
    out.max_residual = std::max(out.max_residual, out.residuals[j]);
  }
  out.x = std::move(x);
  return out;
}

Solution all_zero(const Input& input) {
  return finish(input, std::vector<double>(input.n + 1, 0.0));
}

double require_positive_s(const Input& input) {
  if (input.s > 0.0) return input.s;
  if (input.mass == 0.0) return 0.0;  // caller returns the all-zero solution
  throw InfeasibleError("system infeasible: S == 0 while some r_j > 0");
}

}  // namespace

Input prepare(std::span<const double> r) {
  if (r.empty()) throw std::invalid_argument("prepare: empty coefficient vector");
  Input input;
  input.n = r.size() - 1;
  input.mid = input.n / 2;
  input.r.assign(r.begin(), r.end());
  input.prefix.resize(input.n + 1);
  input.suffix.assign(input.n + 2, 0.0);
  double acc = 0.0;
  for (std::size_t j = 0; j <= input.n; ++j) {
    if (!(r[j] >= 0.0)) throw std::invalid_argument("prepare: negative coefficient");
    acc += r[j];
    input.prefix[j] = acc;
  }
  input.mass = acc;
  acc = 0.0;
  for (std::size_t j = input.n + 1; j-- > 0;) {
    acc += r[j];
    input.suffix[j] = acc;
  }

  input.s_squared = input.prefix[input.mid] - input.suffix[input.mid + 1];
  // Cross-check against the two-half-sums form; identical up to round-off.
  double direct = 0.0;
  for (std::size_t j = 0; j <= input.n; ++j) direct += (j <= input.mid) ? r[j] : -r[j];
  if (std::abs(direct - input.s_squared) > 64.0 * 1e-16 * (input.mass + 1.0))
    throw std::logic_error("prepare: inconsistent S^2 accumulations");

  if (input.s_squared < 0.0) {
    if (input.s_squared < -kFeasibilityEps * input.mass)
      throw InfeasibleError("system infeasible: S^2 = " + std::to_string(input.s_squared) +
                            " < 0");
    input.s_squared = 0.0;
  }
  input.s = std::sqrt(input.s_squared);
  return input;
}

Solution solve_even(const Input& input) {
  const std::size_t n = input.n;
  const std::size_t k = input.mid;
  if (n % 2 != 0) throw std::invalid_argument("solve_even: n is odd");
  const double s = require_positive_s(input);
  if (s == 0.0) return all_zero(input);

  const double eps = kDenominatorEps * input.mass;
  const auto& b = input.prefix;
  const auto& e = input.suffix;
  std::vector<double> x(n + 1, 0.0);
  x[k] = input.r[k] / s;

  const double pivot = b[k] - e[k + 1];  // == S^2
  check_denominator(pivot, k, eps);

  RatioProduct upper(n > kLogSpaceThreshold);
  for (std::size_t m = k + 1; m <= n; ++m) {
    const double den = b[n - m] - e[m];
    check_denominator(den, m, eps);
    upper.multiply(b[n - m + 1] - e[m], den);
    x[m] = upper.apply(input.r[m] * s / pivot);
  }

  RatioProduct lower(n > kLogSpaceThreshold);
  for (std::size_t m = k; m-- > 0;) {
    const std::size_t i = k - m;
    const double den = b[k - i] - e[k + 1 + i];
    check_denominator(den, m, eps);
    lower.multiply(b[k - i] - e[k + i], den);
    x[m] = lower.apply(input.r[m] / s);
  }
  return finish(input, std::move(x));
}

Solution solve_odd(const Input& input) {
  const std::size_t n = input.n;
  const std::size_t k = input.mid;
  if (n % 2 != 1) throw std::invalid_argument("solve_odd: n is even");
  const double s = require_positive_s(input);
  if (s == 0.0) return all_zero(input);

  const double eps = kDenominatorEps * input.mass;
  const auto& b = input.prefix;
  const auto& e = input.suffix;
  std::vector<double> x(n + 1, 0.0);
  x[k + 1] = input.r[k + 1] / s;

  RatioProduct upper(n > kLogSpaceThreshold);
  for (std::size_t m = k + 2; m <= n; ++m) {
    const std::size_t l = m - k - 1;
    const double den = b[k - l] - e[k + l + 1];
    check_denominator(den, m, eps);
    upper.multiply(b[k - l + 1] - e[k + l + 1], den);
    x[m] = upper.apply(input.r[m] / s);
  }

  const double pivot = b[k] - e[k + 2];
  check_denominator(pivot, k, eps);
  RatioProduct lower(n > kLogSpaceThreshold);
  for (std::size_t m = k + 1; m-- > 0;) {
    const std::size_t l = k - m;
    if (l >= 1) {
      const double den = b[k - l] - e[k + l + 2];
      check_denominator(den, m, eps);
      lower.multiply(b[k - l] - e[k + l + 1], den);
    }
    x[m] = lower.apply(input.r[m] * s / pivot);
  }
  return finish(input, std::move(x));
}

Solution solve_recursive(const Input& input) {
  const std::size_t n = input.n;
  const std::size_t k = input.mid;
  const double s = require_positive_s(input);
  if (s == 0.0) return all_zero(input);

  const double eps = kDenominatorEps * input.mass;
  std::vector<double> x(n + 1, 0.0);
  if (n % 2 == 0) {
    x[k] = input.r[k] / s;
    double inner = x[k];  // sum x_{k-l}..x_k
    double upper = 0.0;   // sum x_{k+1}..x_{k+l+1}
    for (std::size_t l = 0; l < k; ++l) {
      const double den_hi = s - inner;
      check_denominator(den_hi, k + l + 1, eps);
      x[k + l + 1] = input.r[k + l + 1] / den_hi;
      upper += x[k + l + 1];
      const double den_lo = s + upper;
      check_denominator(den_lo, k - l - 1, eps);
      x[k - l - 1] = input.r[k - l - 1] / den_lo;
      inner += x[k - l - 1];
    }
  } else {
    x[k + 1] = input.r[k + 1] / s;
    double upper = x[k + 1];  // sum x_{k+1}..x_{k+l+1}
    double inner = 0.0;       // sum x_{k-l}..x_k
    for (std::size_t l = 0; l <= k; ++l) {
      const double den_lo = s + upper;
      check_denominator(den_lo, k - l, eps);
      x[k - l] = input.r[k - l] / den_lo;
      inner += x[k - l];
      if (k + l + 2 <= n) {
        const double den_hi = s - inner;
        check_denominator(den_hi, k + l + 2, eps);
        x[k + l + 2] = input.r[k + l + 2] / den_hi;
        upper += x[k + l + 2];
      }
    }
  }
  return finish(input, std::move(x));
}

Solution solve(std::span<const double> r, bool validate) {
  const Input input = prepare(r);
  Solution closed = (input.n % 2 == 0) ? solve_even(input) : solve_odd(input);
  if (validate) {
    const Solution recursive = solve_recursive(input);
    for (std::size_t j = 0; j < closed.x.size(); ++j) {
      const double diff = std::abs(closed.x[j] - recursive.x[j]);
      if (diff > 1e-9 * std::max(1.0, std::abs(closed.x[j])))
        throw ValidationError("closed-form and recursive solvers disagree at index " +
                              std::to_string(j) + " by " + std::to_string(diff));
    }
  }
  return closed;
}

}  // namespace deauto::solver
