#include <doctest.h>

#include <cmath>
#include <random>

#include "deauto/errors.hpp"
#include "deauto/random.hpp"
#include "deauto/signal.hpp"

using namespace deauto;

namespace {

// Scatter-form oracle, independent of the gather loop in the library.
Signal autoconvolve_oracle(const Signal& x) {
  Signal out(x.empty() ? 0 : 2 * x.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i + j] += x[i] * x[j];
  return out;
}

Signal random_positive(std::mt19937_64& gen, std::size_t len, double lo = 0.2, double hi = 3.0) {
  Signal x(len);
  for (double& v : x) v = uniform_range(gen, lo, hi);
  return x;
}

}  // namespace

TEST_CASE("autoconvolve on known vectors") {
  CHECK(autoconvolve(Signal{1, 0, 0}) == Signal{1, 0, 0, 0, 0});
  CHECK(autoconvolve(Signal{1, 1, 1}) == Signal{1, 2, 3, 2, 1});
  CHECK(autoconvolve(Signal{2, 1}) == Signal{4, 4, 1});
}

TEST_CASE("autoconvolve matches the scatter oracle and its symmetries") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t len = 1 + gen() % 30;
    const Signal x = random_positive(gen, len);
    const Signal full = autoconvolve(x);
    const Signal oracle = autoconvolve_oracle(x);
    REQUIRE(full.size() == oracle.size());
    for (std::size_t i = 0; i < full.size(); ++i)
      CHECK(full[i] == doctest::Approx(oracle[i]).epsilon(1e-13));

    // Index reversal of x reverses the autoconvolution.
    Signal reversed(x.rbegin(), x.rend());
    const Signal conv_rev = autoconvolve(reversed);
    for (std::size_t i = 0; i < full.size(); ++i)
      CHECK(conv_rev[i] == doctest::Approx(full[full.size() - 1 - i]).epsilon(1e-13));

    // Total mass of the full autoconvolution is (sum x)^2.
    const double total = sum(x);
    CHECK(sum(full) == doctest::Approx(total * total).epsilon(1e-12));
  }
}

TEST_CASE("autoconvolve_truncated") {
  CHECK(autoconvolve_truncated(Signal{1, 1, 1}) == Signal{1, 2, 3});
  CHECK(autoconvolve_truncated(Signal{1, 0}) == Signal{1, 0});
  CHECK(autoconvolve_truncated(Signal{1, 1, 1, 1}) == Signal{1, 2, 3, 4});
}

TEST_CASE("i_divergence values and conventions") {
  CHECK(i_divergence(Signal{1, 2}, Signal{1, 2}) == 0.0);
  CHECK(std::isinf(i_divergence(Signal{0, 1}, Signal{1, 0})));
  CHECK(i_divergence(Signal{2, 0}, Signal{1, 1}) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS((void)i_divergence(Signal{1}, Signal{1, 2}), LengthMismatchError);
}

TEST_CASE("i_divergence is nonnegative, zero only at equality") {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t len = 1 + gen() % 12;
    const Signal u = random_positive(gen, len);
    Signal v = random_positive(gen, len);
    const double div = i_divergence(u, v);
    CHECK(div >= 0.0);
    if (u != v) CHECK(div > 0.0);
    CHECK(i_divergence(u, u) == 0.0);
  }
}

TEST_CASE("objective") {
  CHECK(objective(Signal{1, 1, 1}, Signal{1, 2, 3}) == 0.0);
  CHECK(objective(Signal{2, 1}, Signal{4, 4}) == 0.0);
  CHECK(std::isinf(objective(Signal{1, 0}, Signal{0, 1})));
}

TEST_CASE("rho ratios and conventions") {
  CHECK(rho(Signal{1, 1, 1}, Signal{1, 2, 3}) == Signal{1, 1, 1});
  CHECK(rho(Signal{1, 1}, Signal{2, 2}) == Signal{2, 1});
  CHECK(rho(Signal{1, 0}, Signal{1, 0}) == Signal{1, 0});  // 0/0 -> 0
  CHECK_THROWS_AS((void)rho(Signal{0, 1}, Signal{1, 0}), DegenerateRatioError);
}

TEST_CASE("gradient on known points") {
  const std::vector<double> zero = gradient(Signal{1, 1, 1}, Signal{1, 2, 3});
  for (double g : zero) CHECK(g == doctest::Approx(0.0).epsilon(1e-14));

  // Boundary minimizer for y = (1, 4, 1): gradient (0, 0, 2/sqrt(6)).
  const double a = 3.0 / std::sqrt(6.0);
  const std::vector<double> g = gradient(Signal{a, a, 0.0}, Signal{1, 4, 1});
  CHECK(g[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g[2] == doctest::Approx(2.0 / std::sqrt(6.0)).epsilon(1e-12));

  // Any perfect match zeroes the gradient.
  std::mt19937_64 gen(13);
  const Signal x = random_positive(gen, 9);
  const Signal y = autoconvolve_truncated(x);
  for (double value : gradient(x, y)) CHECK(value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("gradient matches central finite differences at interior points") {
  std::mt19937_64 gen(14);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t len = 2 + gen() % 10;
    Signal x = random_positive(gen, len, 0.3, 2.0);
    const Signal y = random_positive(gen, len, 0.2, 4.0);
    const std::vector<double> analytic = gradient(x, y);
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, v);
    const double h = 1e-6 * scale;
    double max_grad = 0.0;
    for (double g : analytic) max_grad = std::max(max_grad, std::abs(g));
    for (std::size_t k = 0; k < len; ++k) {
      const double saved = x[k];
      x[k] = saved + h;
      const double up = objective(x, y);
      x[k] = saved - h;
      const double down = objective(x, y);
      x[k] = saved;
      const double fd = (up - down) / (2.0 * h);
      CHECK(std::abs(analytic[k] - fd) <= 1e-6 * std::max(1.0, max_grad));
    }
  }
}

TEST_CASE("Euler identity: sum x_k grad_k = -2 sum y + 2 sum truncated x*x") {
  std::mt19937_64 gen(15);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t len = 1 + gen() % 20;
    const Signal x = random_positive(gen, len);
    const Signal y = random_positive(gen, len, 0.1, 5.0);
    const std::vector<double> grad = gradient(x, y);
    double lhs = 0.0;
    for (std::size_t k = 0; k < len; ++k) lhs += x[k] * grad[k];
    const double rhs = -2.0 * sum(y) + 2.0 * sum(autoconvolve_truncated(x));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}
