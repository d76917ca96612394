#pragma once

#include <span>
#include <vector>

namespace deauto {

// A nonnegative sequence indexed 0..n, implicitly extended by zeros outside.
using Signal = std::vector<double>;

/// Full autoconvolution: out[i] = sum_{j=0}^{i} x[i-j]*x[j], length 2n+1.
Signal autoconvolve(std::span<const double> x);

/// First n+1 entries of the autoconvolution (same length as x).
Signal autoconvolve_truncated(std::span<const double> x);

/// I-divergence sum_i (u_i log(u_i/v_i) - u_i + v_i) with the 0*log(0) = 0
/// convention. Returns +inf if u_i > 0 where v_i == 0. Always >= 0, and 0
/// iff u == v. Throws LengthMismatchError.
double i_divergence(std::span<const double> u, std::span<const double> v);

/// The fitting objective I(y || truncated x*x).
double objective(std::span<const double> x, std::span<const double> y);

/// Elementwise ratio rho_i = y_i / (x*x)_i with 0/0 defined as 0.
/// Throws DegenerateRatioError if y_i > 0 where (x*x)_i == 0.
Signal rho(std::span<const double> x, std::span<const double> y);

/// Same ratio from a precomputed truncated autoconvolution.
Signal rho_from(std::span<const double> y, std::span<const double> yhat);

/// Gradient of the objective: grad_k = -2 sum_{j=0}^{n-k} (rho_{j+k} - 1) x_j.
/// At coordinates with x_k == 0 this is the right derivative.
std::vector<double> gradient(std::span<const double> x, std::span<const double> y);

/// Gradient from a precomputed ratio vector.
std::vector<double> gradient_from(std::span<const double> x, std::span<const double> rho_values);

double sum(std::span<const double> v);
bool is_nonnegative(std::span<const double> v);

namespace detail {
// One I-divergence term u log(u/v) - u + v, evaluated as u*(d - log1p(d)) with
// d = (v-u)/u and a short series for small |d| to avoid cancellation near u == v.
double i_divergence_term(double u, double v);
}  // namespace detail

}  // namespace deauto
