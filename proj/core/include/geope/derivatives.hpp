#pragma once

#include <vector>

#include "geope/model.hpp"
#include "geope/types.hpp"

namespace geope {

/// All first derivatives J_{l,k} = dU_G/dphi_{l,k} at a control point,
/// together with their Pauli-basis coefficient vectors and the evolution
/// U_G(Phi) the sweep produced.
struct JacobianSet {
  int layers = 0;
  int controls = 0;
  std::vector<CMatrix> entries;     // layer-major: entry(l, k)
  std::vector<CVector> vectorized;  // same order, length 4^n - 1 each
  CMatrix u_total;

  const CMatrix& entry(int l, int k) const { return entries[l * controls + k]; }
  const CVector& vec(int l, int k) const { return vectorized[l * controls + k]; }
};

/// dU(phi_l)/dphi_{l,k}: the top-right block of
/// exp([[iH, iG_k], [0, iH]]) with H the full layer Hamiltonian.
CMatrix layer_partial(const ControlProblem& problem, const RVector& phi_l, int k);

/// Symmetrised second derivative d^2 U(phi_l) / dphi_{l,k} dphi_{l,k2} via
/// the 3x3 auxiliary block exponential, summing both insertion orderings.
CMatrix layer_second_partial(const ControlProblem& problem, const RVector& phi_l, int k, int k2);

JacobianSet full_jacobian(const ControlProblem& problem, const PulseSequence& pulses);

/// Gradient of the infidelity I = 1 - |Tr(U_G^dag V)|/N with respect to every
/// control, layer-major L x K. Throws std::domain_error at |Tr(U_G^dag V)|=0
/// where the fidelity is not differentiable.
RMatrix infidelity_gradient(const ControlProblem& problem, const PulseSequence& pulses);

/// Symmetric (L*K) x (L*K) second-derivative matrix of the infidelity,
/// parameters flattened layer-major (l*K + k).
struct HessianMatrix {
  RMatrix values;
};

HessianMatrix infidelity_hessian(const ControlProblem& problem, const PulseSequence& pulses);

/// Flattens an L x K layer-major control matrix to a vector and back.
RVector flatten_controls(const RMatrix& controls);
RMatrix unflatten_controls(const RVector& flat, int layers, int controls);

}  // namespace geope
