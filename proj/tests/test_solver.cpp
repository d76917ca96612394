#include <doctest.h>

#include <cmath>
#include <random>

#include "deauto/errors.hpp"
#include "deauto/random.hpp"
#include "deauto/signal.hpp"
#include "deauto/solver.hpp"

using namespace deauto;
namespace sv = deauto::solver;

namespace {

// Forward map r_j = x_j * sum_{i=0}^{n-j} x_i: the oracle for round trips.
std::vector<double> forward_map(const Signal& x) {
  std::vector<double> r(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i + j < x.size(); ++i) acc += x[i];
    r[j] = x[j] * acc;
  }
  return r;
}

Signal random_positive(std::mt19937_64& gen, std::size_t len, double lo = 0.2, double hi = 3.0) {
  Signal x(len);
  for (double& v : x) v = uniform_range(gen, lo, hi);
  return x;
}

}  // namespace

TEST_CASE("prepare builds prefix/suffix sums and S") {
  const sv::Input input = sv::prepare(std::vector<double>{4, 2, 1});
  CHECK(input.prefix == std::vector<double>{4, 6, 7});
  CHECK(input.suffix == std::vector<double>{7, 3, 1, 0});
  CHECK(input.s_squared == doctest::Approx(5.0));
  CHECK(input.s == doctest::Approx(std::sqrt(5.0)));
  CHECK(input.mid == 1);

  const sv::Input trivial = sv::prepare(std::vector<double>{1});
  CHECK(trivial.s_squared == doctest::Approx(1.0));
  CHECK(trivial.mid == 0);

  CHECK_THROWS_AS((void)sv::prepare(std::vector<double>{1, 3}), InfeasibleError);
  CHECK_THROWS_AS((void)sv::prepare(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS((void)sv::prepare(std::vector<double>{1, -2}), std::invalid_argument);
}

TEST_CASE("solve_even known cases") {
  const sv::Solution trivial = sv::solve_even(sv::prepare(std::vector<double>{1}));
  CHECK(trivial.x == std::vector<double>{1});

  const sv::Solution sol = sv::solve_even(sv::prepare(std::vector<double>{4, 2, 1}));
  CHECK(sol.x[0] == doctest::Approx(3.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(sol.x[1] == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(sol.x[2] == doctest::Approx(std::sqrt(5.0) / 3.0).epsilon(1e-12));
  CHECK(sol.max_residual <= 1e-12 * 4.0);
}

TEST_CASE("solve_odd known cases") {
  const sv::Solution sol = sv::solve_odd(sv::prepare(std::vector<double>{2, 1}));
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.x[1] == doctest::Approx(1.0).epsilon(1e-12));

  // Residual substitution check for generic r = (a, b) with a > b > 0.
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 20; ++trial) {
    const double b = uniform_range(gen, 0.1, 2.0);
    const double a = b + uniform_range(gen, 0.1, 3.0);
    const sv::Solution s = sv::solve_odd(sv::prepare(std::vector<double>{a, b}));
    CHECK(s.x[0] * (s.x[0] + s.x[1]) == doctest::Approx(a).epsilon(1e-12));
    CHECK(s.x[1] * s.x[0] == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("solve dispatch, recursion agreement, and S == 0 handling") {
  const sv::Solution even = sv::solve(std::vector<double>{4, 2, 1}, true);
  CHECK(even.x.size() == 3);
  const sv::Solution odd = sv::solve(std::vector<double>{2, 1}, true);
  CHECK(odd.x == std::vector<double>{1, 1});

  const sv::Solution rec = sv::solve_recursive(sv::prepare(std::vector<double>{4, 2, 1}));
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(rec.x[j] == doctest::Approx(even.x[j]).epsilon(1e-12));
  CHECK(sv::solve_recursive(sv::prepare(std::vector<double>{1})).x == std::vector<double>{1});

  // S^2 = 0 with positive coefficients: no solution.
  CHECK_THROWS_AS((void)sv::solve(std::vector<double>{0.5, 0.5, 0.5, 0.5}), InfeasibleError);
  // All-zero coefficients admit the all-zero solution.
  CHECK(sv::solve(std::vector<double>{0, 0, 0}).x == std::vector<double>{0, 0, 0});
}

TEST_CASE("round trip: forward map then solve recovers x, both parities") {
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = 1 + gen() % 61;  // n in 0..60
    const Signal x = random_positive(gen, len);
    const std::vector<double> r = forward_map(x);
    const sv::Input input = sv::prepare(r);
    const sv::Solution closed =
        (input.n % 2 == 0) ? sv::solve_even(input) : sv::solve_odd(input);
    const sv::Solution recursive = sv::solve_recursive(input);
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, v);
    for (std::size_t j = 0; j < len; ++j) {
      CHECK(std::abs(closed.x[j] - x[j]) <= 1e-9 * x[j]);
      CHECK(std::abs(closed.x[j] - recursive.x[j]) <= 1e-9 * std::max(1.0, closed.x[j]));
    }
    CHECK(closed.max_residual <= 1e-9 * scale * scale * static_cast<double>(len));

    // Half-sum identity: sum of the lower half equals S.
    double half = 0.0;
    for (std::size_t j = 0; j <= input.mid; ++j) half += closed.x[j];
    CHECK(std::abs(half - input.s) <= 1e-9 * input.s);
  }
}

TEST_CASE("zero coefficients force zero coordinates") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t len = 3 + gen() % 20;
    Signal x = random_positive(gen, len);
    // Zero one or two coordinates past the front; x_0 > 0 keeps partial sums positive.
    x[1 + gen() % (len - 1)] = 0.0;
    x[1 + gen() % (len - 1)] = 0.0;
    const std::vector<double> r = forward_map(x);
    const sv::Solution sol = sv::solve(r);
    for (std::size_t j = 0; j < len; ++j) {
      if (x[j] == 0.0)
        CHECK(sol.x[j] == 0.0);
      else
        CHECK(std::abs(sol.x[j] - x[j]) <= 1e-9 * x[j]);
    }
  }
}

TEST_CASE("perturbing a solution coordinate breaks at least one residual") {
  std::mt19937_64 gen(24);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t len = 2 + gen() % 12;
    const Signal x = random_positive(gen, len, 0.5, 2.0);
    const std::vector<double> r = forward_map(x);
    const std::size_t j = gen() % len;
    for (double factor : {1.01, 0.99}) {
      Signal bumped = x;
      bumped[j] *= factor;
      double worst = 0.0;
      const std::vector<double> mapped = forward_map(bumped);
      for (std::size_t i = 0; i < len; ++i) worst = std::max(worst, std::abs(mapped[i] - r[i]));
      CHECK(worst > 1e-4);
    }
  }
}

TEST_CASE("log-space product path agrees with the recursion at large n") {
  std::mt19937_64 gen(25);
  for (const std::size_t len : {150u, 151u}) {  // n = 149 odd, 150 even; above the threshold
    const Signal x = random_positive(gen, len, 0.4, 2.5);
    const std::vector<double> r = forward_map(x);
    const sv::Input input = sv::prepare(r);
    REQUIRE(input.n > sv::kLogSpaceThreshold);
    const sv::Solution closed =
        (input.n % 2 == 0) ? sv::solve_even(input) : sv::solve_odd(input);
    const sv::Solution recursive = sv::solve_recursive(input);
    for (std::size_t j = 0; j < len; ++j) {
      CHECK(std::abs(closed.x[j] - x[j]) <= 1e-8 * x[j]);
      CHECK(std::abs(closed.x[j] - recursive.x[j]) <= 1e-8 * std::max(1.0, closed.x[j]));
    }
  }
}

TEST_CASE("validate flag cross-checks the recursion") {
  std::mt19937_64 gen(26);
  const Signal x = random_positive(gen, 17);
  CHECK_NOTHROW((void)sv::solve(forward_map(x), true));
}
