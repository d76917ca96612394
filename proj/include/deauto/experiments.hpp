#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "deauto/algorithm.hpp"
#include "deauto/signal.hpp"

namespace deauto::experiments {

enum class Kind { Exact, Random };

struct Spec {
  Kind kind = Kind::Exact;
  int m = 20;          // half-length: data has 2m+1 entries
  int scale_k = 5;     // K, Random kind only: u ~ uniform[1, 2K^2]
  int iterations = 2000;
  std::uint64_t seed = 1;
  int restarts = 3;
  bool validation_mode = false;
  double stop_tolerance = 1e-12;  // forwarded to RunConfig
};

struct GeneratedExact {
  Signal true_x;  // length m+1, iid uniform[1, 10]
  Signal y;       // full autoconvolution, length 2m+1
};

/// Exact-case data: y is the autoconvolution of a random positive vector.
GeneratedExact generate_exact(int m, std::uint64_t seed);

/// Random-case data of length 2m+1: y_k = (k+1) * u_k, u_k ~ uniform[1, 2K^2].
Signal generate_random(int m, int scale_k, std::uint64_t seed);

struct RunRecord {
  std::uint64_t init_seed = 0;
  bool ok = false;
  std::string error;  // nonempty when the run failed
  RunResult result;   // valid when ok
  // Exact kind: ||x^T - padded true_x||_inf / ||true_x||_inf. NaN otherwise.
  double recovery_error = std::numeric_limits<double>::quiet_NaN();
};

struct Result {
  Signal y;
  Signal true_x;  // empty for the Random kind
  std::vector<RunRecord> runs;
  int best = -1;  // index of the smallest final divergence among ok runs
};

/// Runs `restarts` independent fits of the generated data. Data uses
/// spec.seed; restart i initializes with seed spec.seed + 1 + i. Per-run
/// failures are recorded, not fatal.
Result run_experiment(const Spec& spec);

}  // namespace deauto::experiments
