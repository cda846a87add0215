#pragma once

#include <cstdint>

#include "geope/derivatives.hpp"
#include "geope/model.hpp"
#include "geope/rng.hpp"
#include "geope/trace.hpp"

namespace geope {

struct GeopeConfig {
  /// Number of piecewise layers L.
  int layers = 20;
  /// Maximum line-search step size; the key hyperparameter.
  double eta_max = 1.29;
  /// Gram-Schmidt step multiplier applied to eta_max.
  double gs_factor = 1.2;
  /// Solution threshold on the infidelity.
  double epsilon = 1e-9;
  int max_iters = 200;
  /// Half-width of the uniform initial-parameter distribution.
  double init_scale = 0.1;
  std::uint64_t seed = 0;
  /// Golden-section bracket tolerance as a fraction of eta_max.
  double line_search_tol_factor = 1e-6;
  int line_search_scan_points = 17;
};

/// Geodesic from U_G to the target: Gamma is the raw principal generator
/// (exp(i*Gamma) = U_G^dag V); coefficients are the Pauli-basis vectorisation
/// of U_G * Gamma with the trace (global phase) component of Gamma projected
/// out first, so a solved problem gives exactly zero coefficients.
struct GeodesicFrame {
  CMatrix generator;
  CVector coefficients;
};

GeodesicFrame geodesic_generator(const CMatrix& u_g, const CMatrix& v, const PauliBasis& basis);

struct UpdateDirection {
  RMatrix direction;   // L x K, unit Frobenius norm
  double magnitude;    // least-squares solution norm before normalisation
  double residual;     // remaining misalignment with the geodesic
};

/// Least-squares alignment of a control update with the geodesic direction:
/// minimises || sum_{l,k} dphi_{l,k} j_{l,k} - i*gamma ||^2 over real dphi,
/// stacking real and imaginary parts. Throws std::invalid_argument when every
/// Jacobian coefficient vector is zero.
UpdateDirection solve_update_direction(const JacobianSet& jacobians, const CVector& gamma);

/// Random restricted direction with its geodesic component projected out,
/// used to escape points where the aligned line search stalls. Each layer's
/// draw is projected against both the real and imaginary parts of the
/// restricted geodesic coefficients, so the assembled direction has exactly
/// zero inner product with gamma in the stacked real coefficient space.
/// Near-zero projections are redrawn.
RMatrix gram_schmidt_escape(const CVector& gamma, const RestrictionSet& restriction, int layers,
                            Rng& rng);

/// Full optimiser: geodesic-aligned least-squares direction, golden-section
/// line search over (0, eta_max], Gram-Schmidt escape when the search fails
/// to improve the fidelity. Non-convergence is a status, not an error.
RunResult run_geope(const ControlProblem& problem, const GeopeConfig& config,
                    const TraceSink& sink = {});

}  // namespace geope
