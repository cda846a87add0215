#include "geope/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace geope {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_square(const CMatrix& a, const char* who) {
  if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
  if (a.rows() == 0) throw std::invalid_argument(std::string(who) + ": empty matrix");
}

}  // namespace

EighResult eigh(const CMatrix& a) {
  require_square(a, "eigh");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: eigendecomposition failed");
  return EighResult{solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix expm_hermitian_generator(const CMatrix& h) {
  require_square(h, "expm_hermitian_generator");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("expm_hermitian_generator: input is not Hermitian to 1e-10");
  }
  const EighResult eig = eigh(h);
  CVector phases(eig.eigenvalues.size());
  for (int i = 0; i < phases.size(); ++i) {
    phases[i] = Complex(std::cos(eig.eigenvalues[i]), std::sin(eig.eigenvalues[i]));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

CMatrix expm_general(const CMatrix& a) {
  require_square(a, "expm_general");
  if (!a.allFinite()) throw std::invalid_argument("expm_general: non-finite input");
  CMatrix e = a.exp();
  if (!e.allFinite()) throw std::overflow_error("expm_general: overflow in matrix exponential");
  return e;
}

CMatrix logm_unitary_principal(const CMatrix& w) {
  require_square(w, "logm_unitary_principal");
  const int n = static_cast<int>(w.rows());
  const double defect = (w.adjoint() * w - CMatrix::Identity(n, n)).norm();
  if (defect > 1e-8 * std::sqrt(static_cast<double>(n))) {
    throw std::invalid_argument("logm_unitary_principal: input is not unitary to 1e-8");
  }
  // A unitary is normal, so its Schur form is diagonal; the Schur vectors are
  // unitary by construction, which keeps the reconstruction exactly Hermitian
  // up to the explicit symmetrisation below.
  Eigen::ComplexSchur<CMatrix> schur(w);
  if (schur.info() != Eigen::Success) throw std::runtime_error("logm_unitary_principal: Schur failed");
  const CMatrix& q = schur.matrixU();
  RVector phases(n);
  for (int i = 0; i < n; ++i) {
    double theta = std::arg(schur.matrixT()(i, i));
    // Principal branch is (-pi, pi]; phases within 1e-10 of the branch cut
    // are taken as +pi.
    if (theta <= -kPi + 1e-10) theta += 2.0 * kPi;
    phases[i] = theta;
  }
  CMatrix g = q * phases.asDiagonal() * q.adjoint();
  return 0.5 * (g + g.adjoint());
}

RVector lstsq_min_norm(const RMatrix& a, const RVector& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("lstsq_min_norm: shape mismatch");
  Eigen::BDCSVD<RMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  return svd.solve(b);
}

RVector cholesky_solve(const RMatrix& a, const RVector& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw std::invalid_argument("cholesky_solve: shape mismatch");
  }
  Eigen::LLT<RMatrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("cholesky_solve: matrix is not positive-definite");
  }
  return llt.solve(b);
}

GoldenResult golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                const GoldenOptions& options) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_max: need lo < hi");
  if (!(options.tol > 0.0)) throw std::invalid_argument("golden_section_max: tol must be positive");

  GoldenResult best;
  best.argmax = lo;
  best.max = -std::numeric_limits<double>::infinity();
  auto probe = [&](double x) {
    const double v = f(x);
    ++best.evaluations;
    if (v > best.max) {
      best.max = v;
      best.argmax = x;
    }
    return v;
  };

  // Coarse scan to locate the bracket.
  const int scan = std::max(3, options.scan_points);
  const double step = (hi - lo) / (scan - 1);
  int best_i = 0;
  double best_scan = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < scan; ++i) {
    const double v = probe(lo + i * step);
    if (v > best_scan) {
      best_scan = v;
      best_i = i;
    }
  }
  double a = lo + std::max(0, best_i - 1) * step;
  double b = lo + std::min(scan - 1, best_i + 1) * step;

  constexpr double inv_phi = 0.6180339887498948482;  // 1/golden ratio
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = probe(c);
  double fd = probe(d);
  for (int i = 0; i < options.max_shrinks && (b - a) > options.tol; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = probe(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = probe(d);
    }
  }
  return best;
}

GoldenResult golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                double tol) {
  GoldenOptions options;
  options.tol = tol;
  return golden_section_max(f, lo, hi, options);
}

}  // namespace geope
