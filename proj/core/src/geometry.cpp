#include "geope/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "geope/linalg.hpp"

namespace geope {

namespace {

CMatrix traceless_part(const CMatrix& m) {
  const int n = static_cast<int>(m.rows());
  return m - (m.trace() / static_cast<double>(n)) * CMatrix::Identity(n, n);
}

/// Composite Simpson over [0, 1] with the given (odd) node count.
CMatrix simpson_frechet(const CMatrix& w, const CMatrix& k, int nodes) {
  const int n = static_cast<int>(w.rows());
  const double h = 1.0 / (nodes - 1);
  const CMatrix identity = CMatrix::Identity(n, n);
  const CMatrix kw = k * w;
  CMatrix sum = CMatrix::Zero(n, n);
  for (int i = 0; i < nodes; ++i) {
    const double s = i * h;
    const CMatrix interpolant = s * w + (1.0 - s) * identity;
    Eigen::PartialPivLU<CMatrix> lu(interpolant);
    const CMatrix inv = lu.inverse();
    const double weight = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += weight * (inv * kw * inv);
  }
  return (h / 3.0) * sum;
}

}  // namespace

double geodesic_length(const CMatrix& u_g, const CMatrix& v) {
  const CMatrix gamma = traceless_part(logm_unitary_principal(u_g.adjoint() * v));
  return std::sqrt(std::abs((gamma * gamma).trace().real()));
}

CMatrix log_frechet_integral(const CMatrix& w, const CMatrix& k) {
  if (w.rows() != w.cols() || k.rows() != k.cols() || w.rows() != k.rows()) {
    throw std::invalid_argument("log_frechet_integral: shape mismatch");
  }
  // The interpolant sW + (1-s)I is singular on [0, 1] exactly when W has an
  // eigenvalue at -1 (s = 1/2).
  Eigen::ComplexEigenSolver<CMatrix> eig(w, /*computeEigenvectors=*/false);
  for (int i = 0; i < w.rows(); ++i) {
    if (std::abs(eig.eigenvalues()[i] + Complex(1.0, 0.0)) < 1e-8) {
      throw std::domain_error("log_frechet_integral: W has an eigenvalue at -1");
    }
  }
  const CMatrix coarse = simpson_frechet(w, k, 101);
  const CMatrix fine = simpson_frechet(w, k, 201);
  // Richardson step for the O(h^4) Simpson error.
  const CMatrix d = fine + (fine - coarse) / 15.0;
  return 0.5 * (d + d.adjoint());
}

FidelityDirection max_fidelity_direction(const CMatrix& gamma, const PauliBasis& basis) {
  const CMatrix w = expm_hermitian_generator(gamma);
  const Complex total = w.trace();
  if (std::abs(total) < 1e-14 * basis.dim()) {
    throw std::domain_error("max_fidelity_direction: Tr(exp(i*Gamma)) is zero");
  }
  // Both coefficient vectors are real: a_j by construction, the geodesic's
  // because Gamma is Hermitian.
  const CVector w_coeffs = vectorize_tangent(w, basis);
  RVector a(basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    // vectorize_tangent carries 1/N; the ratio below is scale-free.
    a[j] = std::imag(std::conj(total) * w_coeffs[j]) / std::abs(total);
  }
  const double a_norm = a.norm();
  if (a_norm == 0.0) {
    throw std::domain_error("max_fidelity_direction: degenerate linear form");
  }
  FidelityDirection out;
  out.k_hat = a / a_norm;

  const RVector geo = vectorize_tangent(traceless_part(gamma), basis).real();
  const double geo_norm = geo.norm();
  out.overlap_with_geodesic = geo_norm > 0.0 ? out.k_hat.dot(geo) / geo_norm : 0.0;
  return out;
}

PerturbationReport perturb_geodesic(const CMatrix& u_g, const CMatrix& v, const CMatrix& k,
                                    double eps) {
  PerturbationReport report;
  const CMatrix gamma = traceless_part(logm_unitary_principal(u_g.adjoint() * v));
  report.base_length = std::sqrt(std::abs((gamma * gamma).trace().real()));

  const CMatrix u_perturbed = u_g * expm_hermitian_generator(eps * k);
  report.perturbed_length = geodesic_length(u_perturbed, v);

  const CMatrix w = u_g.adjoint() * v;
  const CMatrix d = log_frechet_integral(w, k);
  report.first_order_prediction =
      report.base_length -
      eps * (d * gamma).trace().real() / report.base_length;

  const double k_norm = std::sqrt(std::abs((k * k).trace().real()));
  if (k_norm > 0.0 && report.base_length > 0.0) {
    report.direction_overlap =
        (k * gamma).trace().real() / (k_norm * report.base_length);
  }
  return report;
}

}  // namespace geope
