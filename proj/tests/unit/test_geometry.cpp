#include <doctest.h>

#include <cmath>

#include "geope/geometry.hpp"
#include "geope/linalg.hpp"
#include "geope/rng.hpp"
#include "support/oracles.hpp"

using namespace geope;
namespace oracle = geope::testing;

namespace {

/// The two-qubit tangent vector sigma_x sigma_x + sigma_y sigma_y + sigma_z
/// on the second qubit, whose exponential has a closed form.
CMatrix worked_example_generator() {
  return oracle::kron_word_matrix(PauliWord::parse("XX")) +
         oracle::kron_word_matrix(PauliWord::parse("YY")) +
         oracle::kron_word_matrix(PauliWord::parse("IZ"));
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("geodesic_length endpoint and single-axis cases") {
  Rng rng(401);
  const CMatrix v = oracle::random_unitary(4, rng);
  CHECK(geodesic_length(v, v) < 1e-10);

  const double a = 0.9;
  const CMatrix x = word_matrix(PauliWord::parse("X"));
  // sqrt(Tr((aX)^2)) = a sqrt(2).
  CHECK(geodesic_length(CMatrix::Identity(2, 2), expm_hermitian_generator(a * x)) ==
        doctest::Approx(a * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("geodesic_length matches a quadrature oracle") {
  Rng rng(409);
  const CMatrix u = oracle::random_unitary(8, rng);
  const CMatrix v = oracle::random_unitary(8, rng);
  const double length = geodesic_length(u, v);

  // Numerically integrate the speed of X(t) = U exp(i t Gamma) via finite
  // differences on a 1000-point grid.
  CMatrix gamma = logm_unitary_principal(u.adjoint() * v);
  gamma -= (gamma.trace() / 8.0) * CMatrix::Identity(8, 8);
  const int points = 1000;
  const double dt = 1.0 / points;
  const double h = 1e-6;
  double integral = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = (i + 0.5) * dt;
    const CMatrix plus = u * expm_hermitian_generator((t + h) * gamma);
    const CMatrix minus = u * expm_hermitian_generator((t - h) * gamma);
    const CMatrix speed = (plus - minus) / (2.0 * h);
    integral += std::sqrt(std::abs((speed.adjoint() * speed).trace().real())) * dt;
  }
  CHECK(std::abs(integral - length) < 1e-6 * std::max(1.0, length));
}

TEST_CASE("log_frechet_integral reference cases") {
  Rng rng(419);
  const CMatrix k = oracle::random_hermitian(4, rng);
  // W = I: the integrand is constant and equals K.
  CHECK((log_frechet_integral(CMatrix::Identity(4, 4), k) - k).norm() < 1e-10);

  // K commuting with W (K = Gamma): the integral collapses to Gamma itself.
  const CMatrix gamma = oracle::random_hermitian(4, rng, 0.4);
  const CMatrix w = expm_hermitian_generator(gamma);
  CHECK((log_frechet_integral(w, gamma) - gamma).norm() < 1e-8);

  // Eigenvalue at -1 is rejected.
  CMatrix branch = CMatrix::Identity(4, 4);
  branch(0, 0) = -1.0;
  CHECK_THROWS_AS(log_frechet_integral(branch, k), std::domain_error);
}

TEST_CASE("first-order length prediction matches a recomputation") {
  Rng rng(421);
  for (int trial = 0; trial < 4; ++trial) {
    const CMatrix u = oracle::random_unitary(4, rng);
    const CMatrix w_gen = oracle::random_hermitian(4, rng, 0.35);
    const CMatrix v = u * expm_hermitian_generator(w_gen);
    const CMatrix k = oracle::random_hermitian(4, rng);
    const PerturbationReport report = perturb_geodesic(u, v, k, 1e-4);
    CHECK(std::abs(report.perturbed_length - report.first_order_prediction) < 1e-7);
    CHECK(report.base_length >= 0.0);
    CHECK(report.direction_overlap <= 1.0 + 1e-12);
    CHECK(report.direction_overlap >= -1.0 - 1e-12);
  }
}

TEST_CASE("second-order remainder scales quadratically in the step") {
  Rng rng(431);
  const CMatrix u = oracle::random_unitary(4, rng);
  const CMatrix v = u * expm_hermitian_generator(oracle::random_hermitian(4, rng, 0.4));
  const CMatrix k = oracle::random_hermitian(4, rng);
  double constants[3];
  const double eps_values[3] = {1e-2, 1e-3, 1e-4};
  for (int i = 0; i < 3; ++i) {
    const PerturbationReport report = perturb_geodesic(u, v, k, eps_values[i]);
    constants[i] = std::abs(report.perturbed_length - report.first_order_prediction) /
                   (eps_values[i] * eps_values[i]);
  }
  // The implied constant stays bounded by the one fit at the largest step.
  const double c = 4.0 * std::max(constants[0], 1e-6);
  CHECK(constants[1] < c);
  CHECK(constants[2] < c);
}

TEST_CASE("the worked 2-qubit example reproduces its closed form") {
  const CMatrix gamma = worked_example_generator();
  const CMatrix w = expm_hermitian_generator(gamma);
  const double expected_trace = 2.0 * (std::cos(1.0) + std::cos(std::sqrt(5.0)));
  CHECK(std::abs(w.trace().real() - expected_trace) < 1e-12);
  CHECK(std::abs(w.trace().imag()) < 1e-12);

  PauliBasis basis(2);
  const FidelityDirection direction = max_fidelity_direction(gamma, basis);

  // Published component values, up to a global sign of k_hat.
  RVector k_hat = direction.k_hat;
  int largest = 0;
  for (int i = 1; i < k_hat.size(); ++i) {
    if (std::abs(k_hat[i]) > std::abs(k_hat[largest])) largest = i;
  }
  const double sign = k_hat[largest] >= 0 ? 1.0 : -1.0;
  k_hat *= sign;
  const double overlap = sign * direction.overlap_with_geodesic;

  CHECK(std::abs(k_hat[basis.index_of(PauliWord::parse("ZI"))] - 0.30054) < 5e-4);
  CHECK(std::abs(k_hat[basis.index_of(PauliWord::parse("IZ"))] - 0.73248) < 5e-4);
  CHECK(std::abs(k_hat[basis.index_of(PauliWord::parse("XX"))] - 0.43194) < 5e-4);
  CHECK(std::abs(k_hat[basis.index_of(PauliWord::parse("YY"))] - 0.43194) < 5e-4);
  CHECK(std::abs(overlap - 0.922) < 5e-4);
}

TEST_CASE("single-direction generators align the fidelity and geodesic directions") {
  PauliBasis basis(1);
  const CMatrix x = word_matrix(PauliWord::parse("X"));
  const FidelityDirection direction = max_fidelity_direction(0.7 * x, basis);
  CHECK(std::abs(std::abs(direction.overlap_with_geodesic) - 1.0) < 1e-10);
}

TEST_CASE("fidelity-direction overlap never exceeds one") {
  Rng rng(433);
  PauliBasis basis(2);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix gamma = oracle::random_hermitian(4, rng, 0.5);
    const CMatrix traceless = gamma - (gamma.trace() / 4.0) * CMatrix::Identity(4, 4);
    const FidelityDirection direction = max_fidelity_direction(traceless, basis);
    CHECK(std::abs(direction.overlap_with_geodesic) <= 1.0 + 1e-12);
  }
}

TEST_SUITE_END();
