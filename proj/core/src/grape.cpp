#include "geope/grape.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "geope/linalg.hpp"
#include "geope/rng.hpp"

namespace geope {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct LoopState {
  RunResult result;
  double current_infidelity = 1.0;
  Clock::time_point run_start;
};

LoopState init_run(const ControlProblem& problem, int layers, double init_scale,
                   std::uint64_t seed) {
  if (layers < 1) throw std::invalid_argument("grape: layers must be >= 1");
  LoopState state;
  state.run_start = Clock::now();
  Rng rng(seed);
  state.result.trace.seed = seed;
  state.result.pulses = random_pulses(layers, problem.control_count(), init_scale, rng);
  state.current_infidelity = infidelity(problem, state.result.pulses);
  return state;
}

/// Records one row; returns true when the run is solved and should stop.
bool record_step(LoopState& state, const TraceSink& sink, int iteration, StepKind kind,
                 double step_size, double epsilon, Clock::time_point step_start) {
  TraceRow row;
  row.iteration = iteration;
  row.infidelity = state.current_infidelity;
  row.step_kind = kind;
  row.step_size = step_size;
  row.elapsed_ms = ms_since(step_start);
  state.result.trace.rows.push_back(row);
  if (sink) sink(row);
  if (state.current_infidelity < epsilon) {
    state.result.trace.status = RunStatus::solved;
    state.result.trace.solved_at = iteration;
    return true;
  }
  return false;
}

}  // namespace

double backtracking_search(const std::function<double(double)>& value_at, double value0,
                           double slope, const BacktrackingOptions& options) {
  double lambda = options.initial;
  for (int i = 0; i <= options.max_halvings; ++i) {
    if (value_at(lambda) <= value0 - options.armijo_c * lambda * slope) return lambda;
    lambda *= options.shrink;
  }
  return 0.0;
}

RVector newton_update(const RMatrix& hessian, const RVector& gradient, double delta) {
  const int params = static_cast<int>(hessian.rows());
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(hessian);
  if (solver.info() != Eigen::Success) throw std::runtime_error("newton_update: eigh failed");
  const double sigma = std::max(std::numeric_limits<double>::epsilon(),
                                delta - solver.eigenvalues().minCoeff());
  RMatrix shifted = hessian + sigma * RMatrix::Identity(params, params);
  return cholesky_solve(shifted, gradient);
}

RfoConditioned rfo_condition_hessian(const RMatrix& hessian, const RVector& gradient,
                                     double alpha_start, double phi, double kappa, int inner_max) {
  const int params = static_cast<int>(hessian.rows());
  if (gradient.size() != params) throw std::invalid_argument("rfo_condition_hessian: shape mismatch");
  if (!(kappa > 1.0)) throw std::invalid_argument("rfo_condition_hessian: kappa must exceed 1");

  Eigen::SelfAdjointEigenSolver<RMatrix> base(hessian);
  if (base.info() != Eigen::Success) throw std::runtime_error("rfo_condition_hessian: eigh failed");
  const double h_min = base.eigenvalues().minCoeff();
  const double h_max = base.eigenvalues().maxCoeff();

  RfoConditioned out;
  out.alpha = alpha_start;
  out.inner_iterations = 0;
  out.condition = std::numeric_limits<double>::infinity();
  double shift = 0.0;

  RMatrix augmented(params + 1, params + 1);
  for (int i = 0; i < inner_max; ++i) {
    ++out.inner_iterations;
    const double alpha = out.alpha;
    augmented.topLeftCorner(params, params) = alpha * alpha * hessian;
    augmented.topRightCorner(params, 1) = alpha * gradient;
    augmented.bottomLeftCorner(1, params) = alpha * gradient.transpose();
    augmented(params, params) = 0.0;
    Eigen::SelfAdjointEigenSolver<RMatrix> aug(augmented, Eigen::EigenvaluesOnly);
    if (aug.info() != Eigen::Success) throw std::runtime_error("rfo_condition_hessian: eigh failed");
    // The augmented spectrum is shifted up by its own most negative
    // eigenvalue; the top-left block of the shifted matrix is
    // alpha^2 H + sigma I, strictly positive-definite by strict interlacing.
    const double sigma = std::max(std::numeric_limits<double>::epsilon(),
                                  -aug.eigenvalues().minCoeff());
    shift = sigma / (alpha * alpha);
    out.alpha = phi * alpha;
    const double lo = h_min + shift;
    const double hi = h_max + shift;
    out.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    if (out.condition < kappa) break;
  }
  out.matrix = hessian + shift * RMatrix::Identity(params, params);
  return out;
}

RunResult run_grape_adam(const ControlProblem& problem, const AdamConfig& config,
                         const TraceSink& sink) {
  if (!(config.learning_rate > 0.0)) throw std::invalid_argument("run_grape_adam: learning_rate must be positive");
  if (!(config.beta1 > 0.0 && config.beta1 < 1.0 && config.beta2 > 0.0 && config.beta2 < 1.0)) {
    throw std::invalid_argument("run_grape_adam: betas must lie in (0, 1)");
  }
  LoopState state = init_run(problem, config.layers, config.init_scale, config.seed);

  RMatrix mu = RMatrix::Zero(config.layers, problem.control_count());
  RMatrix nu = RMatrix::Zero(config.layers, problem.control_count());

  for (int m = 1; m <= config.max_iters; ++m) {
    const auto step_start = Clock::now();
    const RMatrix grad = infidelity_gradient(problem, state.result.pulses);

    mu = config.beta1 * mu + (1.0 - config.beta1) * grad;
    nu = config.beta2 * nu + (1.0 - config.beta2) * grad.cwiseProduct(grad);
    const double mu_correction = 1.0 - std::pow(config.beta1, m);
    const double nu_correction = 1.0 - std::pow(config.beta2, m);
    const RMatrix mu_hat = mu / mu_correction;
    const RMatrix nu_hat = nu / nu_correction;

    const RMatrix update = mu_hat.cwiseQuotient(
        nu_hat.cwiseSqrt() + RMatrix::Constant(config.layers, problem.control_count(), config.eps_div));
    state.result.pulses.controls -= config.learning_rate * update;
    state.current_infidelity = infidelity(problem, state.result.pulses);

    if (record_step(state, sink, m, StepKind::adam, config.learning_rate, config.epsilon,
                    step_start)) {
      break;
    }
  }
  state.result.trace.total_ms = ms_since(state.run_start);
  return state.result;
}

RunResult run_grape_newton(const ControlProblem& problem, const NewtonConfig& config,
                           const TraceSink& sink) {
  if (config.delta < 0.0) throw std::invalid_argument("run_grape_newton: delta must be >= 0");
  LoopState state = init_run(problem, config.layers, config.init_scale, config.seed);
  const int controls = problem.control_count();

  for (int m = 1; m <= config.max_iters; ++m) {
    const auto step_start = Clock::now();
    const RMatrix grad = infidelity_gradient(problem, state.result.pulses);
    const HessianMatrix hess = infidelity_hessian(problem, state.result.pulses);
    const RVector g = flatten_controls(grad);

    double step = 0.0;
    try {
      const RVector u = newton_update(hess.values, g, config.delta);
      const double slope = g.dot(u);
      const double i0 = state.current_infidelity;
      step = backtracking_search(
          [&](double lambda) {
            PulseSequence probe{state.result.pulses.controls -
                                lambda * unflatten_controls(u, config.layers, controls)};
            return infidelity(problem, probe);
          },
          i0, slope, config.backtracking);
      if (step > 0.0) {
        state.result.pulses.controls -= step * unflatten_controls(u, config.layers, controls);
        state.current_infidelity = infidelity(problem, state.result.pulses);
      }
    } catch (const std::domain_error&) {
      // Cholesky rejected the shifted Hessian: delta too small for this
      // point. Record the iteration without an update.
      step = 0.0;
    }

    if (record_step(state, sink, m, StepKind::newton, step, config.epsilon, step_start)) break;
  }
  state.result.trace.total_ms = ms_since(state.run_start);
  return state.result;
}

RunResult run_grape_rfo(const ControlProblem& problem, const RfoConfig& config,
                        const TraceSink& sink) {
  if (!(config.kappa > 1.0)) throw std::invalid_argument("run_grape_rfo: kappa must exceed 1");
  LoopState state = init_run(problem, config.layers, config.init_scale, config.seed);
  const int controls = problem.control_count();
  double alpha = config.alpha0;

  for (int m = 1; m <= config.max_iters; ++m) {
    const auto step_start = Clock::now();
    const RMatrix grad = infidelity_gradient(problem, state.result.pulses);
    const HessianMatrix hess = infidelity_hessian(problem, state.result.pulses);
    const RVector g = flatten_controls(grad);

    const RfoConditioned conditioned =
        rfo_condition_hessian(hess.values, g, alpha, config.phi, config.kappa, config.inner_max);
    alpha = conditioned.alpha;

    double step = 0.0;
    try {
      const RVector u = cholesky_solve(conditioned.matrix, g);
      const double slope = g.dot(u);
      step = backtracking_search(
          [&](double lambda) {
            PulseSequence probe{state.result.pulses.controls -
                                lambda * unflatten_controls(u, config.layers, controls)};
            return infidelity(problem, probe);
          },
          state.current_infidelity, slope, config.backtracking);
      if (step > 0.0) {
        state.result.pulses.controls -= step * unflatten_controls(u, config.layers, controls);
        state.current_infidelity = infidelity(problem, state.result.pulses);
      }
    } catch (const std::domain_error&) {
      step = 0.0;
    }

    if (record_step(state, sink, m, StepKind::rfo, step, config.epsilon, step_start)) break;
  }
  state.result.trace.total_ms = ms_since(state.run_start);
  return state.result;
}

}  // namespace geope
