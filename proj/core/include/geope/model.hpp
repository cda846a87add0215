#pragma once

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "geope/pauli.hpp"
#include "geope/types.hpp"

namespace geope {

/// Named target gate with its unitary matrix.
struct GateTarget {
  std::string name;
  CMatrix matrix;
};

/// Supported names: "toffoli" (n=3), "ccz" (n=3), "qft" (any n >= 1).
CMatrix gate_matrix(const std::string& name, int qubit_count);
GateTarget make_gate(const std::string& name, int qubit_count);

/// A piecewise control problem: which Hamiltonian terms are tunable
/// (restriction), which are fixed in every layer (drift), and the target
/// unitary with its solution threshold. Immutable after construction; the
/// per-control generator matrices are cached up front.
class ControlProblem {
 public:
  ControlProblem(PauliBasis basis, RestrictionSet restriction, LieVector drift,
                 CMatrix target, double epsilon);

  int qubit_count() const { return basis_->qubit_count(); }
  int dim() const { return basis_->dim(); }
  const PauliBasis& basis() const { return *basis_; }
  const RestrictionSet& restriction() const { return restriction_; }
  const LieVector& drift() const { return drift_; }
  const CMatrix& target() const { return target_; }
  double epsilon() const { return epsilon_; }

  int control_count() const { return restriction_.size(); }
  const CMatrix& control_generator(int k) const { return control_generators_.at(k); }
  const CMatrix& drift_matrix() const { return drift_matrix_; }

  /// H(phi_l) = drift + sum_k phi_k G_k for one layer.
  CMatrix layer_hamiltonian(const RVector& phi_l) const;

 private:
  std::shared_ptr<const PauliBasis> basis_;
  RestrictionSet restriction_;
  LieVector drift_;
  CMatrix target_;
  double epsilon_;
  CMatrix drift_matrix_;
  std::vector<CMatrix> control_generators_;
};

/// L x K real control matrix; row l holds the coefficients of layer l.
struct PulseSequence {
  RMatrix controls;

  int layers() const { return static_cast<int>(controls.rows()); }
  int controls_per_layer() const { return static_cast<int>(controls.cols()); }
};

PulseSequence zero_pulses(int layers, int controls_per_layer);

class Rng;

/// Uniform initial controls on [-scale, scale], drawn layer-major.
PulseSequence random_pulses(int layers, int controls_per_layer, double scale, Rng& rng);

/// U(phi_l) = exp(i H(phi_l)).
CMatrix layer_unitary(const ControlProblem& problem, const RVector& phi_l);

/// U_G(Phi) = U(phi_L) ... U(phi_1); layer 1 acts first.
CMatrix evolve(const ControlProblem& problem, const PulseSequence& pulses);

/// F = |Tr(U^dag V)| / N, invariant under a global phase of either argument.
double fidelity_of(const ControlProblem& problem, const CMatrix& u);
double fidelity(const ControlProblem& problem, const PulseSequence& pulses);
double infidelity(const ControlProblem& problem, const PulseSequence& pulses);

/// Rydberg atom array: fixed sigma_z sigma_z couplings as drift, per-atom
/// sigma_x and sigma_z drives as controls (K = 2n). The coupling graph per
/// atom count uses the relative strengths 1, 1/8 and 1/125:
///   n=3  triangle, all edges 1
///   n=4  square edges 1, diagonals 1/8
///   n=5  star spokes 1, outer square edges 1/8
///   n=6  2x3 grid edges 1, short diagonals 1/8, long diagonals 1/125
/// coupling_scale multiplies every term.
ControlProblem rydberg_problem(int qubit_count, double coupling_scale, const GateTarget& target,
                               double epsilon);

/// The (i, j, weight) coupling list used by rydberg_problem.
std::vector<std::tuple<int, int, double>> rydberg_couplings(int qubit_count);

}  // namespace geope
