#include "deauto/algorithm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "deauto/errors.hpp"
#include "deauto/lifting.hpp"
#include "deauto/random.hpp"
#include "deauto/solver.hpp"

namespace deauto {

namespace {

double max_abs(std::span<const double> v) {
  double out = 0.0;
  for (double value : v) out = std::max(out, std::abs(value));
  return out;
}

struct StepOutcome {
  IterationState next;
  std::vector<double> r;
  bool r_underflow = false;
};

// One update: r from (x, rho), closed-form solve, refreshed state.
StepOutcome advance(const IterationState& state, std::span<const double> y,
                    const StepOptions& options) {
  StepOutcome out;
  out.r = compute_r(state.x, state.rho);
  // A positive coordinate whose weighted sum is positive must give r_j > 0;
  // r_j == 0 there means the product underflowed.
  const std::size_t len = state.x.size();
  for (std::size_t j = 0; j < len && !out.r_underflow; ++j) {
    if (out.r[j] != 0.0 || state.x[j] == 0.0) continue;
    for (std::size_t i = 0; i + j < len; ++i) {
      if (state.x[i] > 0.0 && state.rho[i + j] > 0.0) {
        out.r_underflow = true;
        break;
      }
    }
  }
  try {
    solver::Solution solution = solver::solve(out.r, options.validate);
    out.next = make_state(state.t + 1, std::move(solution.x), y);
  } catch (const std::exception& err) {
    throw IterationError(state.t, err.what());
  }
  return out;
}

Signal make_initial(std::span<const double> y, const RunConfig& config) {
  const std::size_t len = y.size();
  switch (config.init.kind) {
    case InitKind::Given: {
      if (config.init.values.size() != len)
        throw LengthMismatchError("init vector length differs from data length");
      for (double value : config.init.values)
        if (!(value > 0.0)) throw std::invalid_argument("init values must be strictly positive");
      return config.init.values;
    }
    case InitKind::Constant:
    case InitKind::RandomUniform: {
      // Scale so the initial mass is on the order of sum y.
      const double scale = std::sqrt(std::max(sum(y), 1e-300)) / static_cast<double>(len);
      Signal x(len, 0.0);
      if (config.init.kind == InitKind::Constant) {
        if (!(config.init.constant > 0.0))
          throw std::invalid_argument("init constant must be strictly positive");
        std::fill(x.begin(), x.end(), config.init.constant * scale);
      } else {
        if (!(config.init.lo > 0.0) || !(config.init.hi >= config.init.lo))
          throw std::invalid_argument("init range must satisfy 0 < lo <= hi");
        std::mt19937_64 gen(config.seed);
        for (double& value : x) value = uniform_range(gen, config.init.lo, config.init.hi) * scale;
      }
      return x;
    }
  }
  throw std::logic_error("unreachable init kind");
}

// Validation-mode identity checks for the step t -> t+1. Stores residuals in
// the record for iterate t+1 and throws past tolerance.
void check_step_identities(const IterationState& state, const StepOutcome& outcome,
                           std::span<const double> y, const RunConfig& config, double sum_y,
                           TraceRecord& record) {
  const IterationState& next = outcome.next;
  const double scale = std::max(1.0, state.divergence);

  const lifting::LowerTriangular y_t = lifting::build_y_star(state.x, y);
  const lifting::LowerTriangular y_t1 = lifting::build_y_star(next.x, y);
  const lifting::LowerTriangular w_t = lifting::build_w(state.x);
  const lifting::LowerTriangular w_t1 = lifting::build_w(next.x);
  record.y_gain_lifted = lifting::matrix_i_divergence(y_t, y_t1);
  record.w_gain_lifted = lifting::matrix_i_divergence(w_t1, w_t);

  if (std::isfinite(record.y_gain_lifted) && std::isfinite(record.w_gain_lifted)) {
    record.decomposition_residual =
        std::abs(record.gain - record.y_gain_lifted - record.w_gain_lifted);
    if (record.decomposition_residual > config.tol_id * scale)
      throw ValidationError("gain decomposition residual " +
                            std::to_string(record.decomposition_residual) + " at iteration " +
                            std::to_string(state.t));
    // The closed form for I(W^{t+1}||W^t) relies on mass conservation, which
    // starts at t = 1.
    if (state.t >= 1) {
      record.w_gain_residual = std::abs(record.w_gain_lifted - record.w_gain);
      if (record.w_gain_residual > config.tol_id * scale)
        throw ValidationError("W-gain residual " + std::to_string(record.w_gain_residual) +
                              " at iteration " + std::to_string(state.t));
    }
  }

  // Implicit update: x'_j T'_j = x_j (-grad_j/2 + T_j) with T_j = sum_{i<=n-j} x_i.
  const std::vector<double> grad = gradient_from(state.x, state.rho);
  const std::size_t len = state.x.size();
  std::vector<double> tail_old(len + 1, 0.0), tail_new(len + 1, 0.0);
  for (std::size_t i = 0; i < len; ++i) {
    tail_old[i + 1] = tail_old[i] + state.x[i];
    tail_new[i + 1] = tail_new[i] + next.x[i];
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < len; ++j) {
    const double lhs = next.x[j] * tail_new[len - j];
    const double rhs = state.x[j] * (-0.5 * grad[j] + tail_old[len - j]);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  record.implicit_residual = worst;
  if (worst > 1e-9 * std::max(1.0, sum_y))
    throw ValidationError("implicit-update residual " + std::to_string(worst) + " at iteration " +
                          std::to_string(state.t));

  // Conservation laws, valid from t >= 1.
  if (next.t >= 1) {
    if (std::abs(record.mass - sum_y) > config.tol_mass * std::max(1.0, sum_y))
      throw ValidationError("mass conservation violated at iteration " + std::to_string(next.t));
    if (std::abs(record.orthogonality) > 1e-8 * std::max(1.0, sum_y))
      throw ValidationError("orthogonality violated at iteration " + std::to_string(next.t));
  }
  if (record.gain < -config.tol_gain * std::max(1.0, sum_y))
    throw ValidationError("divergence increased at iteration " + std::to_string(next.t));
}

}  // namespace

IterationState make_state(int t, Signal x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatchError("make_state: length mismatch");
  IterationState state;
  state.t = t;
  state.yhat = autoconvolve_truncated(x);
  state.rho = rho_from(y, state.yhat);
  state.divergence = i_divergence(y, state.yhat);
  state.x = std::move(x);
  return state;
}

std::vector<double> compute_r(std::span<const double> x, std::span<const double> rho_values) {
  if (x.size() != rho_values.size()) throw LengthMismatchError("compute_r: length mismatch");
  const std::size_t len = x.size();
  std::vector<double> r(len, 0.0);
  for (std::size_t j = 0; j < len; ++j) {
    if (x[j] == 0.0) continue;
    double acc = 0.0;
    for (std::size_t i = 0; i + j < len; ++i) acc += x[i] * rho_values[i + j];
    r[j] = x[j] * acc;
  }
  return r;
}

IterationState step(const IterationState& state, std::span<const double> y,
                    const StepOptions& options) {
  if (!std::isfinite(state.divergence))
    throw NonFiniteDivergenceError("step: divergence not finite at iteration " +
                                   std::to_string(state.t));
  return advance(state, y, options).next;
}

KktReport kkt_report(std::span<const double> x, std::span<const double> y, double tol_abs,
                     double theta_abs) {
  const std::vector<double> grad = gradient(x, y);
  KktReport report;
  report.tolerance = tol_abs;
  report.theta = theta_abs;
  report.coordinates.resize(x.size());
  bool boundary_ok = true;
  for (std::size_t j = 0; j < x.size(); ++j) {
    KktCoordinate& coord = report.coordinates[j];
    coord.x = x[j];
    coord.grad = grad[j];
    coord.complementarity = x[j] * grad[j];
    report.max_complementarity =
        std::max(report.max_complementarity, std::abs(coord.complementarity));
    if (x[j] <= theta_abs) {
      report.min_gradient_at_zero = std::min(report.min_gradient_at_zero, grad[j]);
      if (grad[j] < -tol_abs) boundary_ok = false;
    }
  }
  report.satisfied = boundary_ok && report.max_complementarity <= tol_abs;
  return report;
}

double fixed_point_distance(std::span<const double> x, std::span<const double> y) {
  const IterationState state = make_state(0, Signal(x.begin(), x.end()), y);
  if (!std::isfinite(state.divergence))
    throw NonFiniteDivergenceError("fixed_point_distance: divergence not finite");
  const IterationState next = advance(state, y, {}).next;
  double worst = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    worst = std::max(worst, std::abs(next.x[j] - x[j]));
  return worst / std::max(1.0, max_abs(x));
}

RunResult run(std::span<const double> y, const RunConfig& config) {
  if (y.empty()) throw std::invalid_argument("run: empty data");
  if (!is_nonnegative(y)) throw std::invalid_argument("run: data must be nonnegative");
  if (config.max_iterations < 1) throw std::invalid_argument("run: max_iterations must be >= 1");
  if (config.stop_window < 1) throw std::invalid_argument("run: stop_window must be >= 1");

  RunResult result;
  result.seed = config.seed;
  if (y[0] == 0.0)
    result.warning =
        "y[0] == 0: a minimizer may not exist; expect a divergence plateau with "
        "growing coordinates or a solver failure";

  const double sum_y = sum(y);
  IterationState state = make_state(0, make_initial(y, config), y);
  if (!std::isfinite(state.divergence))
    throw NonFiniteDivergenceError("divergence not finite at the initial iterate");

  StepOptions options;
  options.validate = config.validation_mode;
  options.tol_id = config.tol_id;

  auto record_of = [&](const IterationState& s) {
    TraceRecord record;
    record.t = s.t;
    record.divergence = s.divergence;
    record.mass = sum(s.yhat);
    const std::vector<double> grad = gradient_from(s.x, s.rho);
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      record.kkt_residual = std::max(record.kkt_residual, std::abs(s.x[j] * grad[j]));
      record.orthogonality += s.x[j] * grad[j];
    }
    return record;
  };

  result.trace.records.reserve(static_cast<std::size_t>(config.max_iterations) + 1);
  result.trace.records.push_back(record_of(state));

  const double stop_scale = config.stop_tolerance * std::max(1.0, sum_y);
  for (int t = 0; t < config.max_iterations; ++t) {
    StepOutcome outcome = advance(state, y, options);
    TraceRecord record = record_of(outcome.next);
    record.gain = state.divergence - outcome.next.divergence;
    record.r_underflow = outcome.r_underflow;
    double w_gain = 0.0;
    for (std::size_t j = 0; j < outcome.r.size(); ++j) {
      if (outcome.r[j] == 0.0) continue;  // 0 log 0 convention
      w_gain += outcome.r[j] * std::log(outcome.next.x[j] / state.x[j]);
    }
    record.w_gain = 2.0 * w_gain;
    if (config.validation_mode) check_step_identities(state, outcome, y, config, sum_y, record);
    result.trace.records.push_back(record);
    state = std::move(outcome.next);
    if (!std::isfinite(state.divergence))
      throw IterationError(state.t, "divergence became non-finite");

    // Window stopping rule on the divergence decrease.
    const std::size_t rows = result.trace.records.size();
    if (config.stop_tolerance > 0.0 && rows > static_cast<std::size_t>(config.stop_window)) {
      const double before = result.trace.records[rows - 1 - config.stop_window].divergence;
      if (before - state.divergence < stop_scale) {
        result.stopped_by_window = true;
        break;
      }
    }
  }

  result.iterations = state.t;
  result.final_divergence = state.divergence;
  const double tol_abs = config.tol_kkt * std::max(1.0, sum_y);
  const double theta_abs = config.theta_zero * max_abs(state.x);
  result.kkt = kkt_report(state.x, y, tol_abs, theta_abs);
  result.x = std::move(state.x);
  return result;
}

MultistartResult run_multistart(std::span<const double> y, const RunConfig& config, int restarts) {
  if (restarts < 1) throw std::invalid_argument("run_multistart: restarts must be >= 1");
  MultistartResult out;
  out.runs.reserve(static_cast<std::size_t>(restarts));
  for (int i = 0; i < restarts; ++i) {
    RunConfig local = config;
    local.seed = config.seed + static_cast<std::uint64_t>(i);
    out.runs.push_back(run(y, local));
    if (out.runs[i].final_divergence < out.runs[out.best].final_divergence)
      out.best = static_cast<std::size_t>(i);
  }
  return out;
}

}  // namespace deauto
