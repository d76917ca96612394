#include "deauto/lifting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "deauto/errors.hpp"

namespace deauto::lifting {

double LowerTriangular::sum() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < side_; ++i)
    for (std::size_t j = 0; j <= i; ++j) acc += at(i, j);
  return acc;
}

std::vector<double> LowerTriangular::row_sums() const {
  std::vector<double> out(side_, 0.0);
  for (std::size_t i = 0; i < side_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += at(i, j);
    out[i] = acc;
  }
  return out;
}

LowerTriangular build_w(std::span<const double> x) {
  LowerTriangular w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) w.at(i, j) = x[j] * x[i - j];
  return w;
}

LowerTriangular build_y_star(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatchError("build_y_star: length mismatch");
  const Signal yhat = autoconvolve_truncated(x);
  LowerTriangular out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] == 0.0) continue;  // zero row
    if (yhat[i] == 0.0) throw DegenerateRatioError(i);
    const double scale = y[i] / yhat[i];
    for (std::size_t j = 0; j <= i; ++j) out.at(i, j) = x[j] * x[i - j] * scale;
  }
  return out;
}

std::vector<double> tilde_sums(const LowerTriangular& y_matrix) {
  const std::size_t side = y_matrix.side();
  std::vector<double> out(side, 0.0);
  for (std::size_t j = 0; j < side; ++j) {
    double acc = 0.0;
    for (std::size_t i = j; i < side; ++i) acc += y_matrix.at(i, j) + y_matrix.at(i, i - j);
    out[j] = acc;
  }
  return out;
}

double matrix_i_divergence(const LowerTriangular& m, const LowerTriangular& n) {
  if (m.side() != n.side()) throw LengthMismatchError("matrix_i_divergence: side mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < m.side(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double term = detail::i_divergence_term(m.at(i, j), n.at(i, j));
      if (std::isinf(term)) return term;
      acc += term;
    }
  return acc;
}

PythagorasY verify_pythagoras_y(const LowerTriangular& y_matrix, std::span<const double> x,
                                std::span<const double> y) {
  const LowerTriangular w = build_w(x);
  const LowerTriangular y_star = build_y_star(x, y);
  const double total = matrix_i_divergence(y_matrix, w);
  const double to_star = matrix_i_divergence(y_matrix, y_star);
  const double star_to_w = matrix_i_divergence(y_star, w);
  return {std::abs(total - to_star - star_to_w), std::abs(star_to_w - objective(x, y))};
}

PythagorasW verify_pythagoras_w(const LowerTriangular& y_matrix, std::span<const double> x_star,
                                const LowerTriangular& w_matrix) {
  const LowerTriangular w_star = build_w(x_star);
  const double total = matrix_i_divergence(y_matrix, w_matrix);
  const double to_star = matrix_i_divergence(y_matrix, w_star);
  const double star_to_w = matrix_i_divergence(w_star, w_matrix);
  const double mass = sum(autoconvolve_truncated(x_star));
  return {std::abs(total - to_star - star_to_w), std::abs(mass - y_matrix.sum())};
}

}  // namespace deauto::lifting
