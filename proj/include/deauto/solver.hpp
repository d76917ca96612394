#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace deauto::solver {

// Feasibility slack on S^2 (relative to sum r): exact arithmetic guarantees
// S^2 >= 0 for coefficients coming from a lifted matrix, floating point may
// drift slightly negative.
inline constexpr double kFeasibilityEps = 1e-12;
// Denominator guard (relative to sum r).
inline constexpr double kDenominatorEps = 1e-14;
// Above this n the closed-form products are accumulated in log space.
inline constexpr std::size_t kLogSpaceThreshold = 128;

// Coefficients r of the system x_j * sum_{i=0}^{n-j} x_i = r_j together with
// the prefix sums B_j = r_0+..+r_j, suffix sums E_j = r_j+..+r_n (E_{n+1}=0),
// S^2 = B_k - E_{k+1} with k = floor(n/2), and S = sqrt(S^2).
struct Input {
  std::vector<double> r;
  std::vector<double> prefix;  // B, length n+1
  std::vector<double> suffix;  // E, length n+2 so suffix[n+1] == 0
  double s_squared = 0.0;
  double s = 0.0;
  double mass = 0.0;  // sum of r
  std::size_t n = 0;
  std::size_t mid = 0;  // k = floor(n/2)
};

/// Builds the prefix/suffix sums and S. Clamps S^2 in [-eps, 0) to zero and
/// throws InfeasibleError below -kFeasibilityEps * sum(r). Entries of r must
/// be >= 0 (std::invalid_argument otherwise).
Input prepare(std::span<const double> r);

struct Solution {
  std::vector<double> x;
  std::vector<double> residuals;  // |x_j * sum_{i<=n-j} x_i - r_j|
  double max_residual = 0.0;
};

/// Closed form for n = 2k: x_k = r_k/S, then outward products of
/// (B_{n-i+1}-E_i)/(B_{n-i}-E_i) above the middle and
/// (B_{k-i}-E_{k+i})/(B_{k-i}-E_{k+1+i}) below it.
Solution solve_even(const Input& input);

/// Closed form for n = 2k+1: x_{k+1} = r_{k+1}/S, analogous products.
Solution solve_odd(const Input& input);

/// Independent evaluation: middle value, then the alternating two-term
/// recursion x_{hi}*(S - inner) = r_hi, x_{lo}*(S + upper) = r_lo. Serves as
/// an oracle for the closed forms.
Solution solve_recursive(const Input& input);

/// prepare + parity dispatch. With validate=true also runs solve_recursive
/// and checks elementwise agreement (ValidationError on disagreement).
Solution solve(std::span<const double> r, bool validate = false);

}  // namespace deauto::solver
