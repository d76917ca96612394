// Command-line front end: fit a data file, generate benchmark data, or run a
// full multi-restart experiment with trace export.
//
// Exit codes: 0 success, 2 input parse/validation failure, 3 solver or
// validation failure, 4 non-finite divergence at the initial iterate.
// Flag errors use CLI11's own nonzero codes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "deauto/algorithm.hpp"
#include "deauto/errors.hpp"
#include "deauto/experiments.hpp"
#include "deauto/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitNonFinite = 4;

std::string default_out_dir() {
  if (const char* env = std::getenv("DEAUTO_OUT_DIR"); env && *env) return env;
  return ".";
}

json kkt_to_json(const deauto::KktReport& kkt) {
  return json{{"satisfied", kkt.satisfied},
              {"max_complementarity", kkt.max_complementarity},
              {"min_gradient_at_zero", std::isfinite(kkt.min_gradient_at_zero)
                                           ? json(kkt.min_gradient_at_zero)
                                           : json(nullptr)},
              {"tolerance", kkt.tolerance},
              {"theta", kkt.theta}};
}

json run_summary(const deauto::RunResult& run) {
  return json{{"seed", run.seed},
              {"final_divergence", run.final_divergence},
              {"iterations", run.iterations},
              {"stopped_by_window", run.stopped_by_window},
              {"kkt", kkt_to_json(run.kkt)},
              {"warning", run.warning}};
}

struct FitArgs {
  std::string input;
  int max_iter = 2000;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  int restarts = 1;
  std::string init = "random";
  bool validate = false;
  bool allow_degenerate = false;
  int progress = 0;
  std::string out_dir = default_out_dir();
};

int cmd_fit(const FitArgs& args) {
  deauto::Signal y;
  try {
    y = deauto::io::read_signal_file(args.input);
  } catch (const deauto::io::ParseError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitParse;
  }
  if (y[0] == 0.0 && !args.allow_degenerate) {
    std::cerr << "error: y[0] == 0; a minimizer may not exist (pass --allow-degenerate to "
                 "proceed anyway)\n";
    return kExitParse;
  }

  deauto::RunConfig config;
  config.max_iterations = args.max_iter;
  config.stop_tolerance = args.tol;
  config.seed = args.seed;
  config.validation_mode = args.validate;
  if (args.init == "random") {
    config.init.kind = deauto::InitKind::RandomUniform;
  } else if (args.init == "constant") {
    config.init.kind = deauto::InitKind::Constant;
  } else if (args.init.rfind("file=", 0) == 0) {
    config.init.kind = deauto::InitKind::Given;
    try {
      config.init.values = deauto::io::read_signal_file(args.init.substr(5));
    } catch (const deauto::io::ParseError& err) {
      std::cerr << "error: " << err.what() << '\n';
      return kExitParse;
    }
  } else {
    std::cerr << "error: --init must be random, constant, or file=PATH\n";
    return kExitParse;
  }

  deauto::MultistartResult runs;
  try {
    runs = deauto::run_multistart(y, config, args.restarts);
  } catch (const deauto::NonFiniteDivergenceError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitNonFinite;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitParse;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitSolver;
  }

  const deauto::RunResult& best = runs.runs[runs.best];
  if (!best.warning.empty()) std::cerr << "warning: " << best.warning << '\n';

  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);
  deauto::io::write_column_csv((dir / "x.csv").string(), "x", best.x);
  deauto::io::write_trace_csv((dir / "trace.csv").string(), best.trace);

  json report;
  report["input"] = args.input;
  report["final_divergence"] = best.final_divergence;
  report["iterations"] = best.iterations;
  report["stopped_by_window"] = best.stopped_by_window;
  report["kkt"] = kkt_to_json(best.kkt);
  report["seed"] = best.seed;
  report["warning"] = best.warning;
  report["best_restart"] = runs.best;
  report["config"] = json{{"max_iterations", args.max_iter}, {"stop_tolerance", args.tol},
                          {"seed", args.seed},               {"restarts", args.restarts},
                          {"init", args.init},               {"validate", args.validate}};
  json restarts = json::array();
  for (const deauto::RunResult& run : runs.runs) restarts.push_back(run_summary(run));
  report["restarts"] = restarts;
  std::ofstream((dir / "report.json").string()) << report.dump(2) << '\n';

  std::cout << "fit: divergence " << deauto::io::format_double(best.final_divergence) << " after "
            << best.iterations << " iterations, KKT "
            << (best.kkt.satisfied ? "satisfied" : "not satisfied") << ", outputs in "
            << args.out_dir << '\n';
  return 0;
}

struct GenerateArgs {
  std::string kind = "exact";
  int m = 20;
  int K = 5;
  std::uint64_t seed = 1;
  std::string out = "y.csv";
  std::string true_out;
};

int cmd_generate(const GenerateArgs& args) {
  try {
    if (args.kind == "exact") {
      const auto data = deauto::experiments::generate_exact(args.m, args.seed);
      deauto::io::write_column_csv(args.out, "", data.y);
      std::string true_path = args.true_out;
      if (true_path.empty()) {
        fs::path p(args.out);
        const std::string ext = p.extension().string();
        p.replace_extension();
        true_path = p.string() + "_true_x" + ext;
      }
      deauto::io::write_column_csv(true_path, "", data.true_x);
      std::cout << "generate: wrote " << data.y.size() << " values to " << args.out
                << " and the generator to " << true_path << '\n';
    } else {
      const auto y = deauto::experiments::generate_random(args.m, args.K, args.seed);
      deauto::io::write_column_csv(args.out, "", y);
      std::cout << "generate: wrote " << y.size() << " values to " << args.out << '\n';
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitParse;
  }
  return 0;
}

struct ExperimentArgs {
  std::string kind = "exact";
  int m = 20;
  int K = 5;
  int T = 2000;
  std::uint64_t seed = 1;
  int restarts = 3;
  bool validate = false;
  std::string out_dir = default_out_dir();
};

int cmd_experiment(const ExperimentArgs& args) {
  deauto::experiments::Spec spec;
  spec.kind = args.kind == "exact" ? deauto::experiments::Kind::Exact
                                   : deauto::experiments::Kind::Random;
  spec.m = args.m;
  spec.scale_k = args.K;
  spec.iterations = args.T;
  spec.seed = args.seed;
  spec.restarts = args.restarts;
  spec.validation_mode = args.validate;

  deauto::experiments::Result result;
  try {
    result = deauto::experiments::run_experiment(spec);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitParse;
  }

  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);
  deauto::io::write_column_csv((dir / "y.csv").string(), "", result.y);
  if (!result.true_x.empty())
    deauto::io::write_column_csv((dir / "true_x.csv").string(), "", result.true_x);

  json summary;
  summary["config"] = json{{"kind", args.kind},   {"m", args.m},           {"K", args.K},
                           {"T", args.T},         {"seed", args.seed},     {"restarts", args.restarts},
                           {"validate", args.validate}};
  summary["best_run"] = result.best;
  json runs = json::array();
  int completed = 0;
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const auto& record = result.runs[i];
    json entry;
    entry["init_seed"] = record.init_seed;
    entry["ok"] = record.ok;
    if (record.ok) {
      ++completed;
      entry.update(run_summary(record.result));
      if (!std::isnan(record.recovery_error)) entry["recovery_error"] = record.recovery_error;
      const std::string trace_path = (dir / ("trace_run" + std::to_string(i) + ".csv")).string();
      deauto::io::write_trace_csv(trace_path, record.result.trace);
      deauto::io::write_column_csv((dir / ("x_run" + std::to_string(i) + ".csv")).string(), "x",
                                   record.result.x);
      entry["trace_file"] = trace_path;
    } else {
      entry["error"] = record.error;
    }
    runs.push_back(entry);
  }
  summary["runs"] = runs;
  std::ofstream((dir / "summary.json").string()) << summary.dump(2) << '\n';

  std::cout << "experiment: " << completed << "/" << result.runs.size()
            << " runs completed, outputs in " << args.out_dir << '\n';
  return completed > 0 ? 0 : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Positive deautoconvolution by I-divergence alternating minimization.\n"
      "Exit codes: 0 ok, 2 input parse/validation failure, 3 solver or validation\n"
      "failure, 4 non-finite divergence at the initial iterate."};
  app.require_subcommand(1);

  FitArgs fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a nonnegative data file");
  fit_cmd->add_option("input", fit.input, "data file: one nonnegative value per line")->required();
  fit_cmd->add_option("--max-iter", fit.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--tol", fit.tol,
                      "stop when the divergence decrease over 10 iterations drops below "
                      "tol * sum(y); 0 disables");
  fit_cmd->add_option("--seed", fit.seed, "base seed for random initialization");
  fit_cmd->add_option("--restarts", fit.restarts, "independent restarts (seeds seed, seed+1, ...)")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--init", fit.init, "random | constant | file=PATH");
  fit_cmd->add_flag("--validate", fit.validate,
                    "check descent/conservation identities and the recursive solver each step");
  fit_cmd->add_flag("--allow-degenerate", fit.allow_degenerate, "accept data with y[0] == 0");
  fit_cmd->add_option("--out-dir", fit.out_dir, "output directory (default $DEAUTO_OUT_DIR or .)");

  GenerateArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Write benchmark data");
  gen_cmd->add_option("--kind", gen.kind, "exact | random")
      ->check(CLI::IsMember({"exact", "random"}));
  gen_cmd->add_option("--m", gen.m, "half-length: output has 2m+1 values")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--K", gen.K, "random kind scale: u ~ uniform[1, 2K^2]")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--out", gen.out, "output path for y");
  gen_cmd->add_option("--true-out", gen.true_out,
                      "output path for the exact-case generator (default: derived from --out)");

  ExperimentArgs exp;
  CLI::App* exp_cmd = app.add_subcommand("experiment", "Generate data and run seeded restarts");
  exp_cmd->add_option("--kind", exp.kind, "exact | random")
      ->check(CLI::IsMember({"exact", "random"}));
  exp_cmd->add_option("--m", exp.m, "half-length")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--K", exp.K, "random kind scale")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--T", exp.T, "iterations per run")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--seed", exp.seed, "data seed; restart i initializes with seed+1+i");
  exp_cmd->add_option("--restarts", exp.restarts, "number of runs")->check(CLI::PositiveNumber);
  exp_cmd->add_flag("--validate", exp.validate, "validation mode for every run");
  exp_cmd->add_option("--out-dir", exp.out_dir, "output directory (default $DEAUTO_OUT_DIR or .)");

  CLI11_PARSE(app, argc, argv);

  if (fit_cmd->parsed()) return cmd_fit(fit);
  if (gen_cmd->parsed()) return cmd_generate(gen);
  return cmd_experiment(exp);
}
