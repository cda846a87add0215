#pragma once

#include <functional>

#include "geope/types.hpp"

namespace geope {

/// Hermitian eigendecomposition, eigenvalues ascending, eigenvector columns
/// unitary.
struct EighResult {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

EighResult eigh(const CMatrix& a);

/// exp(i*H) for Hermitian H, computed spectrally so the result is unitary up
/// to rounding. Throws std::invalid_argument if H is not Hermitian to 1e-10.
CMatrix expm_hermitian_generator(const CMatrix& h);

/// General matrix exponential via Pade scaling-and-squaring with
/// backward-error driven order selection. Needed for the non-normal block
/// matrices of the derivative machinery. Throws std::overflow_error if the
/// result is not finite.
CMatrix expm_general(const CMatrix& a);

/// Principal Hermitian generator of a unitary: returns G with W = exp(i*G)
/// and every eigenphase in (-pi, pi]. Eigenphases within 1e-10 of -pi are
/// wrapped to +pi (branch boundary). Throws std::invalid_argument if W is not
/// unitary to 1e-8.
CMatrix logm_unitary_principal(const CMatrix& w);

/// Minimum-norm least-squares solution of A x ~ b via SVD with a relative
/// singular-value cutoff of 1e-12. Rank deficiency is expected, not an error.
RVector lstsq_min_norm(const RMatrix& a, const RVector& b);

/// Solves A x = b for symmetric positive-definite A by Cholesky. Throws
/// std::domain_error on a non-positive pivot (insufficient regularisation
/// upstream).
RVector cholesky_solve(const RMatrix& a, const RVector& b);

struct GoldenResult {
  double argmax = 0.0;
  double max = 0.0;
  int evaluations = 0;
};

struct GoldenOptions {
  double tol = 1e-8;
  int max_shrinks = 100;
  /// Uniform pre-scan used to pick the bracket before the golden shrink; the
  /// best point ever probed is returned, so a multimodal objective still
  /// yields its best scanned peak.
  int scan_points = 17;
};

/// Bracketed golden-section maximisation of f on [lo, hi]. Terminates when
/// the bracket width drops below tol or after max_shrinks shrinks.
GoldenResult golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                const GoldenOptions& options);
GoldenResult golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                double tol);

}  // namespace geope
