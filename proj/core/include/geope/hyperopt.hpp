#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "geope/model.hpp"

namespace geope {

/// Gaussian-process posterior over a 1-D hyperparameter. Squared-exponential
/// kernel; length-scale and signal variance are fit by marginal-likelihood
/// maximisation over a small grid, observations are standardised internally,
/// and alpha_bo enters as the noise variance on the standardised scale.
class GpSurrogate {
 public:
  static GpSurrogate fit(const std::vector<double>& points, const std::vector<double>& values,
                         double noise);

  struct Posterior {
    double mean = 0.0;
    double stddev = 0.0;  // latent (noise-free) posterior deviation, >= 0
  };
  Posterior predict(double p) const;

  double noise() const { return noise_; }
  double length_scale() const { return length_scale_; }
  /// Signal amplitude in the units of the observations.
  double signal_scale() const { return signal_ * value_scale_; }
  int observation_count() const { return static_cast<int>(points_.size()); }

 private:
  std::vector<double> points_;
  RVector weights_;       // K^-1 y on the standardised scale
  RMatrix kinv_;          // K^-1
  double noise_ = 0.0;
  double length_scale_ = 1.0;
  double signal_ = 1.0;
  double value_mean_ = 0.0;
  double value_scale_ = 1.0;
};

/// Black-box objective: value at hyperparameter p, using the given seed for
/// whatever randomness one observation needs.
using Objective = std::function<double(double p, std::uint64_t seed)>;

struct SearchConfig {
  double lo = 0.0;
  double hi = 1.0;
  int initial_points = 5;   // n0 uniform-random observations before UCB
  double kappa_bo = 5.0;    // exploration weight of the upper confidence bound
  double alpha_bo = 0.02;   // observation noise level
  int samples_per_observation = 50;
  int iteration_cap = 200;  // per-run iteration cap inside one observation
  int budget = 25;          // total observations including the initial ones
  std::uint64_t seed = 0;
  unsigned workers = 0;     // 0 = hardware concurrency
};

/// Minimisation acquisition: argmin over a fixed 512-point grid of
/// mu(p) - kappa_bo * sigma(p). Deterministic given the surrogate.
double ucb_select(const GpSurrogate& surrogate, double lo, double hi, double kappa_bo);

struct Observation {
  int index = 0;
  double p = 0.0;
  double value = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

struct SearchResult {
  double best_p = 0.0;
  double best_value = 0.0;
  std::vector<Observation> log;
};

/// Bayesian minimisation of a noisy objective: initial_points random probes,
/// then UCB-selected probes until the budget is exhausted.
SearchResult search(const Objective& objective, const SearchConfig& config);

enum class Method { geope, grape_adam, grape_newton, grape_rfo };

Method method_from_string(const std::string& name);
const char* to_string(Method method);

/// C(p): cumulative infidelity per run, summed to the solving iteration or
/// the cap, averaged over `samples` seeded runs (seeds seed+0 .. seed+N-1).
/// p is the method's scalar hyperparameter (eta_max, learning rate, delta or
/// kappa). Runs execute concurrently on the worker pool.
double mean_cumulative_infidelity(Method method, const ControlProblem& problem, int layers,
                                  double p, int samples, int cap, std::uint64_t seed,
                                  unsigned workers = 0);

/// The objective wrapper used by the hyperparameter search for real control
/// problems.
Objective make_control_objective(Method method, const ControlProblem& problem, int layers,
                                 int samples, int cap, unsigned workers = 0);

}  // namespace geope
