#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "deauto/signal.hpp"

namespace deauto {

struct IterationState {
  int t = 0;
  Signal x;
  Signal yhat;  // truncated autoconvolution of x
  Signal rho;   // y_i / yhat_i with the 0/0 -> 0 convention
  double divergence = 0.0;
};

/// Builds a state from an iterate: computes yhat, rho and the divergence.
IterationState make_state(int t, Signal x, std::span<const double> y);

/// r_j = x_j * sum_{i=0}^{n-j} x_i * rho_{i+j}; equals the j-th column sum of
/// the optimal lifted matrix built from x and y.
std::vector<double> compute_r(std::span<const double> x, std::span<const double> rho_values);

struct StepOptions {
  bool validate = false;       // cross-check the closed-form solve against the recursion
  double tol_id = 1e-8;        // gain decomposition / W-gain identities (relative)
  double tol_implicit = 1e-9;  // implicit-update residual (relative to sum y)
};

/// One iteration x^t -> x^{t+1}: solve the system with coefficients
/// compute_r(x, rho). Solver errors are rethrown as IterationError.
IterationState step(const IterationState& state, std::span<const double> y,
                    const StepOptions& options = {});

struct TraceRecord {
  int t = 0;
  double divergence = 0.0;
  double gain = 0.0;          // divergence[t-1] - divergence[t]; 0 at t == 0
  double w_gain = 0.0;        // 2 sum_j r_j log(x^t_j / x^{t-1}_j); 0 at t == 0
  double kkt_residual = 0.0;   // max_j |x_j grad_j|
  double orthogonality = 0.0;  // sum_j x_j grad_j; 0 to round-off for t >= 1
  double mass = 0.0;           // sum of the truncated autoconvolution
  bool r_underflow = false;    // a positive coordinate produced r_j == 0

  // Validation mode only (NaN otherwise).
  double y_gain_lifted = std::numeric_limits<double>::quiet_NaN();  // I(Y^{t-1}||Y^t)
  double w_gain_lifted = std::numeric_limits<double>::quiet_NaN();  // I(W^t||W^{t-1})
  double decomposition_residual = std::numeric_limits<double>::quiet_NaN();
  double w_gain_residual = std::numeric_limits<double>::quiet_NaN();
  double implicit_residual = std::numeric_limits<double>::quiet_NaN();
};

struct IterationTrace {
  std::vector<TraceRecord> records;  // records[t] for t = 0..iterations
};

enum class InitKind { RandomUniform, Constant, Given };

struct InitSpec {
  InitKind kind = InitKind::RandomUniform;
  // RandomUniform: iid uniform factors on [lo, hi], scaled by sqrt(sum y)/(n+1)
  // so that the initial mass roughly matches sum y.
  double lo = 0.5;
  double hi = 1.5;
  double constant = 1.0;  // Constant: this value times the same scale
  Signal values;          // Given: used verbatim (must be strictly positive)
};

struct RunConfig {
  int max_iterations = 2000;
  // Stop once the divergence decrease over stop_window iterations falls below
  // stop_tolerance * max(1, sum y). Set to 0 to always run max_iterations.
  double stop_tolerance = 1e-12;
  int stop_window = 10;
  std::uint64_t seed = 1;
  InitSpec init;
  bool validation_mode = false;
  double tol_mass = 1e-10;   // relative to sum y, asserted for t >= 1 in validation mode
  double tol_id = 1e-8;      // identity residuals, relative
  double tol_gain = 1e-12;   // monotonicity slack, relative to sum y
  double tol_kkt = 1e-6;     // KKT verdict threshold, relative to max(1, sum y)
  double theta_zero = 1e-10; // boundary classification threshold, relative to max x
};

struct KktCoordinate {
  double x = 0.0;
  double grad = 0.0;
  double complementarity = 0.0;  // x * grad
};

struct KktReport {
  std::vector<KktCoordinate> coordinates;
  double max_complementarity = 0.0;
  // Minimum gradient over coordinates with x_j <= theta; +inf if none.
  double min_gradient_at_zero = std::numeric_limits<double>::infinity();
  double tolerance = 0.0;  // absolute threshold used
  double theta = 0.0;      // absolute zero-classification threshold used
  bool satisfied = false;
};

/// Complementarity x_j * grad_j per coordinate. Verdict: satisfied iff
/// max_j |x_j grad_j| <= tol_abs and grad_j >= -tol_abs wherever x_j <= theta_abs.
KktReport kkt_report(std::span<const double> x, std::span<const double> y, double tol_abs,
                     double theta_abs);

/// ||step(x) - x||_inf / max(1, ||x||_inf); certifies numerical fixed points.
double fixed_point_distance(std::span<const double> x, std::span<const double> y);

struct RunResult {
  Signal x;
  IterationTrace trace;
  KktReport kkt;
  int iterations = 0;  // steps executed; trace has iterations + 1 records
  bool stopped_by_window = false;
  double final_divergence = 0.0;
  std::uint64_t seed = 0;
  std::string warning;  // nonempty for degenerate data (y[0] == 0)
};

/// Runs the iteration from a fresh init until max_iterations or the window
/// stopping rule. Throws NonFiniteDivergenceError if the initial divergence is
/// not finite, IterationError on solver failure, ValidationError when a
/// validation-mode identity breaks.
RunResult run(std::span<const double> y, const RunConfig& config);

struct MultistartResult {
  std::vector<RunResult> runs;
  std::size_t best = 0;  // index of the smallest final divergence
};

/// Independent restarts with seeds config.seed, config.seed + 1, ... Runs are
/// ordered by restart index.
MultistartResult run_multistart(std::span<const double> y, const RunConfig& config, int restarts);

}  // namespace deauto
