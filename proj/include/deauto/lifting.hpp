#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "deauto/signal.hpp"

namespace deauto::lifting {

// Dense lower-triangular nonnegative matrix; entries above the diagonal are
// structurally zero. Side n+1. Used for diagnostics and tests only: the
// iteration hot path never materializes these matrices.
class LowerTriangular {
 public:
  explicit LowerTriangular(std::size_t side) : side_(side), cells_(side * side, 0.0) {}

  std::size_t side() const { return side_; }
  double& at(std::size_t i, std::size_t j) { return cells_[i * side_ + j]; }
  double at(std::size_t i, std::size_t j) const { return cells_[i * side_ + j]; }

  double sum() const;
  std::vector<double> row_sums() const;

 private:
  std::size_t side_;
  std::vector<double> cells_;
};

/// W_ij = x_j * x_{i-j} for j <= i. Row sums equal the truncated autoconvolution.
LowerTriangular build_w(std::span<const double> x);

/// Y*_ij = x_j * x_{i-j} * y_i / (x*x)_i: the divergence-minimizing matrix with
/// row sums y. Rows with y_i == 0 are zero. Throws DegenerateRatioError if
/// y_i > 0 where (x*x)_i == 0.
LowerTriangular build_y_star(std::span<const double> x, std::span<const double> y);

/// Column-plus-subdiagonal sums: tilde_j = sum_{i>=j} Y_ij + sum_{i>=j} Y_{i,i-j}.
std::vector<double> tilde_sums(const LowerTriangular& y_matrix);

/// I-divergence between matrices, same conventions as the vector version.
double matrix_i_divergence(const LowerTriangular& m, const LowerTriangular& n);

struct PythagorasY {
  double identity_residual;   // |I(Y||W) - I(Y||Y*) - I(Y*||W)|
  double objective_residual;  // |I(Y*||W) - I(y||x*x)|
};

/// Checks the first Pythagorean identity at W = build_w(x), Y* = build_y_star(x, y).
PythagorasY verify_pythagoras_y(const LowerTriangular& y_matrix, std::span<const double> x,
                                std::span<const double> y);

struct PythagorasW {
  double identity_residual;  // |I(Y||W) - I(Y||W*) - I(W*||W)|
  double mass_residual;      // |sum truncated x**x* - sum_ij Y_ij|
};

/// Checks the second Pythagorean identity, with x_star = solve(tilde_sums(Y)/2)
/// supplied by the caller and W* = build_w(x_star).
PythagorasW verify_pythagoras_w(const LowerTriangular& y_matrix, std::span<const double> x_star,
                                const LowerTriangular& w_matrix);

}  // namespace deauto::lifting
