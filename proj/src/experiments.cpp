#include "deauto/experiments.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "deauto/random.hpp"

namespace deauto::experiments {

GeneratedExact generate_exact(int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("generate_exact: m must be >= 1");
  GeneratedExact out;
  out.true_x.resize(static_cast<std::size_t>(m) + 1);
  std::mt19937_64 gen(seed);
  for (double& value : out.true_x) value = uniform_range(gen, 1.0, 10.0);
  out.y = autoconvolve(out.true_x);  // full length 2m+1
  return out;
}

Signal generate_random(int m, int scale_k, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("generate_random: m must be >= 1");
  if (scale_k < 1) throw std::invalid_argument("generate_random: K must be >= 1");
  Signal y(2 * static_cast<std::size_t>(m) + 1);
  std::mt19937_64 gen(seed);
  const double hi = 2.0 * scale_k * scale_k;
  for (std::size_t k = 0; k < y.size(); ++k)
    y[k] = static_cast<double>(k + 1) * uniform_range(gen, 1.0, hi);
  return y;
}

Result run_experiment(const Spec& spec) {
  if (spec.restarts < 1) throw std::invalid_argument("run_experiment: restarts must be >= 1");
  if (spec.iterations < 1) throw std::invalid_argument("run_experiment: iterations must be >= 1");

  Result out;
  if (spec.kind == Kind::Exact) {
    GeneratedExact data = generate_exact(spec.m, spec.seed);
    out.true_x = std::move(data.true_x);
    out.y = std::move(data.y);
  } else {
    out.y = generate_random(spec.m, spec.scale_k, spec.seed);
  }

  double true_scale = 0.0;
  for (double value : out.true_x) true_scale = std::max(true_scale, std::abs(value));

  out.runs.resize(static_cast<std::size_t>(spec.restarts));
  for (int i = 0; i < spec.restarts; ++i) {
    RunRecord& record = out.runs[static_cast<std::size_t>(i)];
    record.init_seed = spec.seed + 1 + static_cast<std::uint64_t>(i);
    RunConfig config;
    config.max_iterations = spec.iterations;
    config.seed = record.init_seed;
    config.validation_mode = spec.validation_mode;
    config.stop_tolerance = spec.stop_tolerance;
    try {
      record.result = run(out.y, config);
      record.ok = true;
    } catch (const std::exception& err) {
      record.error = err.what();
      continue;
    }
    if (spec.kind == Kind::Exact) {
      // Compare against the generator padded with zeros to the fit length.
      double worst = 0.0;
      for (std::size_t j = 0; j < record.result.x.size(); ++j) {
        const double truth = j < out.true_x.size() ? out.true_x[j] : 0.0;
        worst = std::max(worst, std::abs(record.result.x[j] - truth));
      }
      record.recovery_error = worst / true_scale;
    }
    if (out.best < 0 || record.result.final_divergence <
                            out.runs[static_cast<std::size_t>(out.best)].result.final_divergence)
      out.best = i;
  }
  return out;
}

}  // namespace deauto::experiments
