#include <doctest.h>

#include <cmath>
#include <vector>

#include "geope/grape.hpp"
#include "geope/linalg.hpp"
#include "geope/rng.hpp"
#include "support/oracles.hpp"

using namespace geope;
namespace oracle = geope::testing;

namespace {

ControlProblem single_qubit_problem(const char* control, const CMatrix& target) {
  PauliBasis basis(1);
  RestrictionSet restriction(basis, {basis.index_of(PauliWord::parse(control))});
  return ControlProblem(basis, restriction, LieVector::zeros(3), target, 1e-9);
}

/// Independent scalar Adam stepping on an explicitly supplied gradient.
double scalar_adam_reference(const std::function<double(double)>& gradient, double x0,
                             double learning_rate, int steps) {
  double x = x0, mu = 0.0, nu = 0.0;
  for (int t = 1; t <= steps; ++t) {
    const double g = gradient(x);
    mu = 0.9 * mu + 0.1 * g;
    nu = 0.999 * nu + 0.001 * g * g;
    const double mu_hat = mu / (1.0 - std::pow(0.9, t));
    const double nu_hat = nu / (1.0 - std::pow(0.999, t));
    x -= learning_rate * mu_hat / (std::sqrt(nu_hat) + 1e-8);
  }
  return x;
}

}  // namespace

TEST_SUITE_BEGIN("grape");

TEST_CASE("backtracking accepts only Armijo-satisfying steps") {
  // f(x) = x^2 around x0 = 1, descent direction u = 2 (the gradient).
  const double value0 = 1.0;
  const double slope = 4.0;  // g*u = 2*2
  std::vector<std::pair<double, double>> evaluated;
  BacktrackingOptions options;
  const double lambda = backtracking_search(
      [&](double l) {
        const double x = 1.0 - l * 2.0;
        evaluated.emplace_back(l, x * x);
        return x * x;
      },
      value0, slope, options);
  REQUIRE(lambda > 0.0);
  const double accepted = (1.0 - lambda * 2.0) * (1.0 - lambda * 2.0);
  CHECK(accepted <= value0 - options.armijo_c * lambda * slope);

  // A function that never decreases yields no step.
  const double none = backtracking_search([](double) { return 10.0; }, 1.0, 1.0, options);
  CHECK(none == 0.0);
}

TEST_CASE("newton_update is exact for quadratic models") {
  Rng rng(301);
  RMatrix g(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) g(r, c) = rng.normal();
  const RMatrix a = g * g.transpose() + RMatrix::Identity(6, 6);
  RVector x_star(6), x0(6);
  for (int i = 0; i < 6; ++i) {
    x_star[i] = rng.normal();
    x0[i] = rng.normal();
  }
  // Quadratic f(x) = 0.5 (x - x*)^T A (x - x*): gradient A(x0 - x*), Hessian A.
  const RVector grad = a * (x0 - x_star);
  const RVector u = newton_update(a, grad, 0.0);
  CHECK(((x0 - u) - x_star).norm() < 1e-10);
}

TEST_CASE("newton_update applies the spectrum shift") {
  RMatrix h(2, 2);
  h << -2, 0, 0, 1;
  RVector g(2);
  g << 1.0, 7.0;
  // sigma = delta - min = 0.5 - (-2) = 2.5, so the solve uses diag(0.5, 3.5).
  const RVector u = newton_update(h, g, 0.5);
  CHECK(u[0] == doctest::Approx(1.0 / 0.5).epsilon(1e-12));
  CHECK(u[1] == doctest::Approx(7.0 / 3.5).epsilon(1e-12));
}

TEST_CASE("adam leaves parameters unchanged at a stationary start") {
  // U(phi) = exp(i phi XI) against V = exp(i b ZZ): the fidelity is
  // |cos(phi)| |cos(b)|, stationary at phi = 0 with 0 < F < 1.
  PauliBasis basis(2);
  RestrictionSet restriction(basis, {basis.index_of(PauliWord::parse("XI"))});
  const int zz = basis.index_of(PauliWord::parse("ZZ"));
  const CMatrix target =
      expm_hermitian_generator(assemble_hamiltonian(LieVector::from_entries(15, {{zz, 0.7}}), basis));
  ControlProblem problem(basis, restriction, LieVector::zeros(15), target, 1e-9);

  AdamConfig config;
  config.layers = 1;
  config.learning_rate = 0.05;
  config.max_iters = 5;
  config.init_scale = 0.0;
  const RunResult result = run_grape_adam(problem, config);
  CHECK(result.trace.status == RunStatus::max_iters);
  CHECK(result.pulses.controls.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("adam matches a scalar reference implementation on a 1-parameter problem") {
  const double a = 0.3;
  const CMatrix x = word_matrix(PauliWord::parse("X"));
  ControlProblem problem = single_qubit_problem("X", expm_hermitian_generator(a * x));

  AdamConfig config;
  config.layers = 1;
  config.learning_rate = 0.05;
  config.max_iters = 500;
  config.epsilon = 1e-12;  // let it run the full schedule
  config.init_scale = 0.0;
  const RunResult result = run_grape_adam(problem, config);

  // I(phi) = 1 - |cos(phi - a)| has gradient sin(phi-a) sign(cos(phi-a)).
  const double reference = scalar_adam_reference(
      [&](double phi) { return std::sin(phi - a) * (std::cos(phi - a) >= 0 ? 1.0 : -1.0); }, 0.0,
      0.05, static_cast<int>(result.trace.rows.size()));
  CHECK(std::abs(result.pulses.controls(0, 0) - reference) < 1e-5);
  CHECK(std::abs(result.pulses.controls(0, 0) - a) < 1e-2);
}

TEST_CASE("rfo conditioning yields a zero update at zero gradient") {
  Rng rng(307);
  RMatrix g(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g(r, c) = rng.normal();
  const RMatrix h = 0.5 * (g + g.transpose());
  const RVector zero = RVector::Zero(4);
  const RfoConditioned conditioned = rfo_condition_hessian(h, zero, 1.0, 0.9, 60.0, 300);
  const RVector u = cholesky_solve(conditioned.matrix, zero);
  CHECK(u.norm() == 0.0);
}

TEST_CASE("rfo conditioning lowers the condition number monotonically") {
  Rng rng(311);
  RMatrix g(8, 8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) g(r, c) = rng.normal();
  const RMatrix spd = g * g.transpose() + 0.1 * RMatrix::Identity(8, 8);
  RVector grad(8);
  for (int i = 0; i < 8; ++i) grad[i] = rng.normal();
  const RMatrix h = spd + 3.0 * grad * grad.transpose();  // SPD plus rank-1

  double previous = std::numeric_limits<double>::infinity();
  for (int rounds = 1; rounds <= 25; ++rounds) {
    // kappa just above 1 is unreachable, so the loop always runs exactly
    // `rounds` iterations; the achieved condition must fall monotonically.
    const RfoConditioned conditioned = rfo_condition_hessian(h, grad, 1.0, 0.9, 1.0001, rounds);
    CHECK(conditioned.inner_iterations == rounds);
    // Direct condition-number evaluation of the regularised matrix.
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(conditioned.matrix);
    const double condition = eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();
    CHECK(condition <= previous * (1.0 + 1e-12));
    CHECK(eig.eigenvalues().minCoeff() > 0.0);  // positive-definite throughout
    previous = condition;
  }
}

TEST_CASE("newton and rfo runs descend on a small problem and respect Armijo") {
  Rng rng(313);
  ControlProblem problem = rydberg_problem(3, 1.0, make_gate("toffoli", 3), 1e-9);

  NewtonConfig newton;
  newton.layers = 4;
  newton.delta = 0.449;
  newton.max_iters = 6;
  newton.seed = 3;
  const RunResult nr = run_grape_newton(problem, newton);
  REQUIRE(!nr.trace.rows.empty());
  // Infidelity never increases across accepted steps.
  double previous = 1.0;
  bool first = true;
  for (const TraceRow& row : nr.trace.rows) {
    if (!first && row.step_size > 0.0) CHECK(row.infidelity <= previous + 1e-12);
    previous = row.infidelity;
    first = false;
  }

  RfoConfig rfo;
  rfo.layers = 4;
  rfo.kappa = 60.7;
  rfo.max_iters = 6;
  rfo.seed = 3;
  const RunResult rf = run_grape_rfo(problem, rfo);
  REQUIRE(!rf.trace.rows.empty());
  CHECK(rf.trace.rows.back().infidelity <= rf.trace.rows.front().infidelity + 1e-12);
}

TEST_CASE("grape runs are bit-reproducible for a fixed seed") {
  ControlProblem problem = rydberg_problem(3, 1.0, make_gate("ccz", 3), 1e-9);
  AdamConfig config;
  config.layers = 6;
  config.learning_rate = 0.05;
  config.max_iters = 8;
  config.seed = 11;
  const RunResult a = run_grape_adam(problem, config);
  const RunResult b = run_grape_adam(problem, config);
  CHECK((a.pulses.controls - b.pulses.controls).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(a.trace.rows.size() == b.trace.rows.size());
  for (std::size_t i = 0; i < a.trace.rows.size(); ++i) {
    CHECK(a.trace.rows[i].infidelity == b.trace.rows[i].infidelity);
  }
}

TEST_SUITE_END();
