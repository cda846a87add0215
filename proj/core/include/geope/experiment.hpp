#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "geope/hyperopt.hpp"
#include "geope/model.hpp"
#include "geope/trace.hpp"

namespace geope {

/// One experiment, fully determined by a flat key=value config file plus the
/// base seed. Unknown keys are rejected.
struct ExperimentConfig {
  std::string gate;                  // toffoli | ccz | qft
  int qubits = 3;
  std::string lattice = "rydberg";   // coupling graph family
  double coupling_scale = 1.0;       // J0
  int layers = 20;                   // piecewise steps L
  std::string method = "geope";      // geope | grape-adam | grape-nr | grape-rfo
  double epsilon = 1e-9;
  int max_iters = 200;
  int samples = 1;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  double init_scale = 0.1;

  // Method hyperparameters; each method requires exactly one of these.
  std::optional<double> eta_max;        // geope
  double gs_factor = 1.2;               // geope only
  std::optional<double> learning_rate;  // grape-adam
  std::optional<double> delta;          // grape-nr
  std::optional<double> kappa;          // grape-rfo

  // Hyperparameter search block (hypersearch subcommand).
  std::optional<double> search_lo;
  std::optional<double> search_hi;
  int search_budget = 25;
  int search_initial = 5;
  double kappa_bo = 5.0;
  double alpha_bo = 0.02;
  int samples_per_observation = 50;

  static ExperimentConfig load(const std::filesystem::path& path);
  static ExperimentConfig parse(const std::string& text, const std::string& origin);

  /// Throws std::runtime_error with a descriptive message on any invalid or
  /// missing setting for the chosen method.
  void validate() const;

  Method method_enum() const { return method_from_string(method); }

  /// The method's scalar hyperparameter (validated present).
  double hyperparameter() const;

  ControlProblem make_problem() const;

  /// One seeded optimisation with the configured method.
  RunResult run_once(std::uint64_t run_seed, const TraceSink& sink = {}) const;
};

/// Cumulative fraction of samples solved by each iteration index,
/// non-decreasing, values in [0, 1]. Index 0 counts runs solved before the
/// first update.
struct SuccessCurve {
  std::vector<double> cumulative;
};

SuccessCurve aggregate_success(const std::vector<OptRunTrace>& traces, int max_iters);

struct BenchmarkResult {
  std::vector<RunResult> runs;  // ordered by sample index
  SuccessCurve curve;
};

/// samples seeded runs (seed + index) on a worker pool.
BenchmarkResult run_benchmark(const ExperimentConfig& config, unsigned workers);

}  // namespace geope
