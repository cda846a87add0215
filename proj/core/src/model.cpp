#include "geope/model.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "geope/linalg.hpp"
#include "geope/rng.hpp"

namespace geope {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

CMatrix gate_matrix(const std::string& name, int qubit_count) {
  const int dim = 1 << qubit_count;
  if (name == "toffoli") {
    if (qubit_count != 3) throw std::invalid_argument("gate_matrix: toffoli requires 3 qubits");
    CMatrix m = CMatrix::Identity(8, 8);
    m(6, 6) = 0.0;
    m(7, 7) = 0.0;
    m(6, 7) = 1.0;
    m(7, 6) = 1.0;
    return m;
  }
  if (name == "ccz") {
    if (qubit_count != 3) throw std::invalid_argument("gate_matrix: ccz requires 3 qubits");
    CMatrix m = CMatrix::Identity(8, 8);
    m(7, 7) = -1.0;
    return m;
  }
  if (name == "qft") {
    if (qubit_count < 1) throw std::invalid_argument("gate_matrix: qft requires >= 1 qubit");
    CMatrix m(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        const double angle = 2.0 * kPi * static_cast<double>(j) * static_cast<double>(k) / dim;
        m(j, k) = norm * Complex(std::cos(angle), std::sin(angle));
      }
    }
    return m;
  }
  throw std::invalid_argument("gate_matrix: unknown gate '" + name + "'");
}

GateTarget make_gate(const std::string& name, int qubit_count) {
  return GateTarget{name, gate_matrix(name, qubit_count)};
}

ControlProblem::ControlProblem(PauliBasis basis, RestrictionSet restriction, LieVector drift,
                               CMatrix target, double epsilon)
    : basis_(std::make_shared<const PauliBasis>(std::move(basis))),
      restriction_(std::move(restriction)),
      drift_(std::move(drift)),
      target_(std::move(target)),
      epsilon_(epsilon) {
  if (drift_.dim() != basis_->size()) {
    throw std::invalid_argument("ControlProblem: drift dimension does not match basis");
  }
  for (int i : drift_.support()) {
    if (restriction_.contains(i)) {
      throw std::invalid_argument("ControlProblem: drift support overlaps the restriction set");
    }
  }
  const int n = basis_->dim();
  if (target_.rows() != n || target_.cols() != n) {
    throw std::invalid_argument("ControlProblem: target dimension does not match qubit count");
  }
  if ((target_.adjoint() * target_ - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("ControlProblem: target is not unitary to 1e-10");
  }
  if (!(epsilon_ > 0.0 && epsilon_ < 1.0)) {
    throw std::invalid_argument("ControlProblem: epsilon must lie in (0, 1)");
  }
  drift_matrix_ = assemble_hamiltonian(drift_, *basis_);
  control_generators_.reserve(restriction_.size());
  for (int k = 0; k < restriction_.size(); ++k) {
    control_generators_.push_back(word_matrix(basis_->word(restriction_.index(k))));
  }
}

CMatrix ControlProblem::layer_hamiltonian(const RVector& phi_l) const {
  if (phi_l.size() != control_count()) {
    throw std::invalid_argument("layer_hamiltonian: control count mismatch");
  }
  CMatrix h = drift_matrix_;
  for (int k = 0; k < control_count(); ++k) {
    if (phi_l[k] != 0.0) h += phi_l[k] * control_generators_[k];
  }
  return h;
}

PulseSequence zero_pulses(int layers, int controls_per_layer) {
  return PulseSequence{RMatrix::Zero(layers, controls_per_layer)};
}

PulseSequence random_pulses(int layers, int controls_per_layer, double scale, Rng& rng) {
  RMatrix controls(layers, controls_per_layer);
  for (int l = 0; l < layers; ++l) {
    for (int k = 0; k < controls_per_layer; ++k) controls(l, k) = rng.uniform(-scale, scale);
  }
  return PulseSequence{std::move(controls)};
}

CMatrix layer_unitary(const ControlProblem& problem, const RVector& phi_l) {
  return expm_hermitian_generator(problem.layer_hamiltonian(phi_l));
}

CMatrix evolve(const ControlProblem& problem, const PulseSequence& pulses) {
  if (pulses.controls_per_layer() != problem.control_count()) {
    throw std::invalid_argument("evolve: control count mismatch");
  }
  CMatrix u = CMatrix::Identity(problem.dim(), problem.dim());
  for (int l = 0; l < pulses.layers(); ++l) {
    u = layer_unitary(problem, pulses.controls.row(l).transpose()) * u;
  }
  return u;
}

double fidelity_of(const ControlProblem& problem, const CMatrix& u) {
  const Complex t = frob_inner(u, problem.target());
  return std::abs(t) / problem.dim();
}

double fidelity(const ControlProblem& problem, const PulseSequence& pulses) {
  return fidelity_of(problem, evolve(problem, pulses));
}

double infidelity(const ControlProblem& problem, const PulseSequence& pulses) {
  return 1.0 - fidelity(problem, pulses);
}

std::vector<std::tuple<int, int, double>> rydberg_couplings(int qubit_count) {
  switch (qubit_count) {
    case 3:
      return {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}};
    case 4:
      // Atoms on the corners of a square, 0-1-2-3 around the cycle.
      return {{0, 1, 1.0},       {1, 2, 1.0},       {2, 3, 1.0}, {3, 0, 1.0},
              {0, 2, 1.0 / 8.0}, {1, 3, 1.0 / 8.0}};
    case 5:
      // Atoms 0..3 on a square with atom 4 in the centre.
      return {{0, 4, 1.0},       {1, 4, 1.0},       {2, 4, 1.0},       {3, 4, 1.0},
              {0, 1, 1.0 / 8.0}, {1, 2, 1.0 / 8.0}, {2, 3, 1.0 / 8.0}, {3, 0, 1.0 / 8.0}};
    case 6:
      // 2x3 grid: 0 1 2 over 3 4 5.
      return {{0, 1, 1.0},         {1, 2, 1.0},         {3, 4, 1.0},       {4, 5, 1.0},
              {0, 3, 1.0},         {1, 4, 1.0},         {2, 5, 1.0},
              {0, 4, 1.0 / 8.0},   {1, 3, 1.0 / 8.0},   {1, 5, 1.0 / 8.0}, {2, 4, 1.0 / 8.0},
              {0, 5, 1.0 / 125.0}, {2, 3, 1.0 / 125.0}};
    default:
      throw std::invalid_argument("rydberg_couplings: supported atom counts are 3..6");
  }
}

ControlProblem rydberg_problem(int qubit_count, double coupling_scale, const GateTarget& target,
                               double epsilon) {
  PauliBasis basis(qubit_count);
  auto single_site_index = [&](int atom, Pauli p) {
    std::vector<Pauli> symbols(qubit_count, Pauli::I);
    symbols[atom] = p;
    return basis.index_of(PauliWord(std::move(symbols)));
  };

  std::vector<std::pair<int, double>> drift_entries;
  for (const auto& [i, j, weight] : rydberg_couplings(qubit_count)) {
    std::vector<Pauli> symbols(qubit_count, Pauli::I);
    symbols[i] = Pauli::Z;
    symbols[j] = Pauli::Z;
    drift_entries.emplace_back(basis.index_of(PauliWord(std::move(symbols))),
                               coupling_scale * weight);
  }
  LieVector drift = LieVector::from_entries(basis.size(), std::move(drift_entries));

  std::vector<int> controls;
  controls.reserve(2 * qubit_count);
  for (int atom = 0; atom < qubit_count; ++atom) {
    controls.push_back(single_site_index(atom, Pauli::X));
    controls.push_back(single_site_index(atom, Pauli::Z));
  }
  RestrictionSet restriction(basis, std::move(controls));

  return ControlProblem(std::move(basis), std::move(restriction), std::move(drift),
                        target.matrix, epsilon);
}

}  // namespace geope
