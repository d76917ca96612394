#include "deauto/signal.hpp"

#include <cmath>
#include <limits>

#include "deauto/errors.hpp"

namespace deauto {

namespace detail {

double i_divergence_term(double u, double v) {
  if (u == 0.0) return v;
  if (v == 0.0) return std::numeric_limits<double>::infinity();
  // u log(u/v) - u + v == u * (d - log1p(d)) with d = (v - u)/u.
  const double d = (v - u) / u;
  if (std::abs(d) < 1e-4) {
    // d - log1p(d) = d^2/2 - d^3/3 + d^4/4 - ...; truncation error < |d|^6.
    return u * d * d * (0.5 + d * (-1.0 / 3.0 + d * (0.25 - d / 5.0)));
  }
  return u * (d - std::log1p(d));
}

}  // namespace detail

Signal autoconvolve(std::span<const double> x) {
  const std::size_t len = x.size();
  Signal out(len == 0 ? 0 : 2 * len - 1, 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t j_lo = i >= len ? i - len + 1 : 0;
    const std::size_t j_hi = std::min(i, len - 1);
    double acc = 0.0;
    for (std::size_t j = j_lo; j <= j_hi; ++j) acc += x[i - j] * x[j];
    out[i] = acc;
  }
  return out;
}

Signal autoconvolve_truncated(std::span<const double> x) {
  const std::size_t len = x.size();
  Signal out(len, 0.0);
  for (std::size_t i = 0; i < len; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += x[i - j] * x[j];
    out[i] = acc;
  }
  return out;
}

double i_divergence(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw LengthMismatchError("i_divergence: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double term = detail::i_divergence_term(u[i], v[i]);
    if (std::isinf(term)) return term;
    acc += term;
  }
  return acc;
}

double objective(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatchError("objective: length mismatch");
  const Signal yhat = autoconvolve_truncated(x);
  return i_divergence(y, yhat);
}

Signal rho_from(std::span<const double> y, std::span<const double> yhat) {
  if (y.size() != yhat.size()) throw LengthMismatchError("rho: length mismatch");
  Signal out(y.size(), 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (yhat[i] == 0.0) {
      if (y[i] > 0.0) throw DegenerateRatioError(i);
      out[i] = 0.0;  // 0/0 convention
    } else {
      out[i] = y[i] / yhat[i];
    }
  }
  return out;
}

Signal rho(std::span<const double> x, std::span<const double> y) {
  const Signal yhat = autoconvolve_truncated(x);
  return rho_from(y, yhat);
}

std::vector<double> gradient_from(std::span<const double> x, std::span<const double> rho_values) {
  if (x.size() != rho_values.size()) throw LengthMismatchError("gradient: length mismatch");
  const std::size_t len = x.size();
  std::vector<double> grad(len, 0.0);
  for (std::size_t k = 0; k < len; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j + k < len; ++j) acc += (rho_values[j + k] - 1.0) * x[j];
    grad[k] = -2.0 * acc;
  }
  return grad;
}

std::vector<double> gradient(std::span<const double> x, std::span<const double> y) {
  return gradient_from(x, rho(x, y));
}

double sum(std::span<const double> v) {
  double acc = 0.0;
  for (double value : v) acc += value;
  return acc;
}

bool is_nonnegative(std::span<const double> v) {
  for (double value : v)
    if (!(value >= 0.0)) return false;
  return true;
}

}  // namespace deauto
