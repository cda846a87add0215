#pragma once

#include "geope/pauli.hpp"
#include "geope/types.hpp"

namespace geope {

/// Geodesic path length between two unitaries: sqrt(Tr(Gamma^2)) for the
/// principal-branch generator with its trace (global phase) component
/// dropped.
double geodesic_length(const CMatrix& u_g, const CMatrix& v);

/// Frechet derivative of the principal logarithm along a Hermitian direction:
///   D = integral_0^1 [sW + (1-s)I]^-1 K W [sW + (1-s)I]^-1 ds,
/// evaluated by composite Simpson quadrature with Richardson extrapolation.
/// Throws std::domain_error when W has an eigenvalue at -1 (singular
/// interpolant on the path).
CMatrix log_frechet_integral(const CMatrix& w, const CMatrix& k);

struct FidelityDirection {
  /// Unit coefficient vector of the tangent direction maximising the
  /// first-order fidelity change.
  RVector k_hat;
  /// Inner product with the normalised geodesic coefficient vector.
  double overlap_with_geodesic;
};

/// First-order fidelity maximiser at W = exp(i*Gamma): builds the linear form
/// a_j = Im(Tr(W)^* Tr(W G_j)) / |Tr(W)| over the basis and returns its unit
/// maximiser together with the overlap against the geodesic direction.
/// Throws std::domain_error when Tr(exp(i*Gamma)) = 0.
FidelityDirection max_fidelity_direction(const CMatrix& gamma, const PauliBasis& basis);

/// First-order perturbation bookkeeping for a tangent move
/// U' = U_G exp(i eps K).
struct PerturbationReport {
  double base_length = 0.0;
  double perturbed_length = 0.0;
  double first_order_prediction = 0.0;
  double direction_overlap = 0.0;  // cos angle between K and the geodesic generator
};

PerturbationReport perturb_geodesic(const CMatrix& u_g, const CMatrix& v, const CMatrix& k,
                                    double eps);

}  // namespace geope
