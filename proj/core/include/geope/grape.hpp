#pragma once

#include <cstdint>
#include <functional>

#include "geope/derivatives.hpp"
#include "geope/model.hpp"
#include "geope/trace.hpp"

namespace geope {

struct BacktrackingOptions {
  double initial = 1.0;
  double shrink = 0.5;
  double armijo_c = 1e-4;
  int max_halvings = 40;
};

struct AdamConfig {
  int layers = 20;
  double learning_rate = 0.046;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_div = 1e-8;
  double epsilon = 1e-9;
  int max_iters = 200;
  double init_scale = 0.1;
  std::uint64_t seed = 0;
};

struct NewtonConfig {
  int layers = 20;
  /// Spectrum-shift regularisation parameter.
  double delta = 0.5;
  double epsilon = 1e-9;
  int max_iters = 200;
  BacktrackingOptions backtracking;
  double init_scale = 0.1;
  std::uint64_t seed = 0;
};

struct RfoConfig {
  int layers = 20;
  /// Target condition number of the regularised Hessian.
  double kappa = 60.0;
  double alpha0 = 1.0;
  double phi = 0.9;
  int inner_max = 300;
  double epsilon = 1e-9;
  int max_iters = 200;
  BacktrackingOptions backtracking;
  double init_scale = 0.1;
  std::uint64_t seed = 0;
};

/// First-order GRAPE with Adam moment updates and bias correction.
RunResult run_grape_adam(const ControlProblem& problem, const AdamConfig& config,
                         const TraceSink& sink = {});

/// Second-order GRAPE: Newton-Raphson with the Hessian spectrum shifted by
/// sigma = max(machine-eps, delta - min(Sigma)) and Armijo backtracking.
RunResult run_grape_newton(const ControlProblem& problem, const NewtonConfig& config,
                           const TraceSink& sink = {});

/// Second-order GRAPE: rational function optimisation. The augmented Hessian
/// [[alpha^2 H, alpha g], [alpha g^T, 0]] is regularised and its top-left
/// block conditioned by shrinking alpha until the condition number drops
/// below kappa (alpha persists across iterations).
RunResult run_grape_rfo(const ControlProblem& problem, const RfoConfig& config,
                        const TraceSink& sink = {});

/// Spectrum-shifted Newton system solve: eigendecompose h, shift by
/// sigma = max(machine-eps, delta - min(eigenvalues)), Cholesky-solve for the
/// update u with h_reg u = g.
RVector newton_update(const RMatrix& hessian, const RVector& gradient, double delta);

struct RfoConditioned {
  RMatrix matrix;       // regularised P x P Hessian
  double alpha;         // damping value after the loop
  int inner_iterations; // how many conditioning iterations ran
  double condition;     // achieved condition number (2-norm)
};

/// The RFO conditioning loop on its own; proceeds with the last regularised
/// matrix when the condition target is unreachable within inner_max rounds.
RfoConditioned rfo_condition_hessian(const RMatrix& hessian, const RVector& gradient,
                                     double alpha_start, double phi, double kappa, int inner_max);

/// Armijo backtracking on a descent direction: returns the accepted step
/// scale, or 0 when no step satisfies the criterion within max_halvings.
/// slope must be g^T u > 0 for the update x - lambda*u.
double backtracking_search(const std::function<double(double)>& value_at, double value0,
                           double slope, const BacktrackingOptions& options);

}  // namespace geope
