#include "geope/derivatives.hpp"

#include <cmath>
#include <stdexcept>

#include "geope/linalg.hpp"

namespace geope {

namespace {

const Complex kI(0.0, 1.0);

/// Layer unitaries with cached left/right partial products:
///   prefix[l] = U_{l-1} ... U_1   (identity for l = 0)
///   suffix[l] = U_L ... U_{l+1}   (identity for l = L-1)
/// so that dU_G/dphi_{l,k} = suffix[l] * dU_l * prefix[l].
struct EvolutionCache {
  std::vector<CMatrix> unit;
  std::vector<CMatrix> prefix;
  std::vector<CMatrix> suffix;
  CMatrix u_total;
};

EvolutionCache build_cache(const ControlProblem& problem, const PulseSequence& pulses) {
  const int layers = pulses.layers();
  const int dim = problem.dim();
  if (pulses.controls_per_layer() != problem.control_count()) {
    throw std::invalid_argument("derivatives: control count mismatch");
  }
  if (layers < 1) throw std::invalid_argument("derivatives: need at least one layer");
  EvolutionCache cache;
  cache.unit.resize(layers);
  cache.prefix.resize(layers);
  cache.suffix.resize(layers);
  for (int l = 0; l < layers; ++l) {
    cache.unit[l] = layer_unitary(problem, pulses.controls.row(l).transpose());
  }
  cache.prefix[0] = CMatrix::Identity(dim, dim);
  for (int l = 1; l < layers; ++l) cache.prefix[l] = cache.unit[l - 1] * cache.prefix[l - 1];
  cache.suffix[layers - 1] = CMatrix::Identity(dim, dim);
  for (int l = layers - 2; l >= 0; --l) cache.suffix[l] = cache.suffix[l + 1] * cache.unit[l + 1];
  cache.u_total = cache.suffix[0] * cache.unit[0];
  return cache;
}

CMatrix block_partial(const CMatrix& h, const CMatrix& g) {
  const int dim = static_cast<int>(h.rows());
  CMatrix block = CMatrix::Zero(2 * dim, 2 * dim);
  block.topLeftCorner(dim, dim) = kI * h;
  block.bottomRightCorner(dim, dim) = kI * h;
  block.topRightCorner(dim, dim) = kI * g;
  return expm_general(block).topRightCorner(dim, dim);
}

/// Single-ordering second derivative block: top-right of
/// exp([[iH, iG_a, 0], [0, iH, iG_b], [0, 0, iH]]).
CMatrix block_second(const CMatrix& h, const CMatrix& ga, const CMatrix& gb) {
  const int dim = static_cast<int>(h.rows());
  CMatrix block = CMatrix::Zero(3 * dim, 3 * dim);
  block.block(0, 0, dim, dim) = kI * h;
  block.block(dim, dim, dim, dim) = kI * h;
  block.block(2 * dim, 2 * dim, dim, dim) = kI * h;
  block.block(0, dim, dim, dim) = kI * ga;
  block.block(dim, 2 * dim, dim, dim) = kI * gb;
  return expm_general(block).topRightCorner(dim, dim);
}

/// Overlap with the target, t_a = Tr(J_a^dag V), for one layer's partials
/// without materialising the full-product Jacobians:
/// Tr((S d P)^dag V) = Tr(d^dag (S^dag V P^dag)).
struct TargetTraces {
  Complex total;                         // T = Tr(U_G^dag V)
  std::vector<std::vector<Complex>> t;   // t[l][k]
  std::vector<std::vector<CMatrix>> du;  // layer partials dU_l/dphi_{l,k}
};

TargetTraces target_traces(const ControlProblem& problem, const PulseSequence& pulses,
                           const EvolutionCache& cache) {
  const int layers = pulses.layers();
  const int controls = problem.control_count();
  TargetTraces out;
  out.total = frob_inner(cache.u_total, problem.target());
  out.t.assign(layers, std::vector<Complex>(controls));
  out.du.assign(layers, std::vector<CMatrix>(controls));
  for (int l = 0; l < layers; ++l) {
    const CMatrix h = problem.layer_hamiltonian(pulses.controls.row(l).transpose());
    const CMatrix m = cache.suffix[l].adjoint() * problem.target() * cache.prefix[l].adjoint();
    for (int k = 0; k < controls; ++k) {
      out.du[l][k] = block_partial(h, problem.control_generator(k));
      out.t[l][k] = frob_inner(out.du[l][k], m);
    }
  }
  return out;
}

void require_differentiable(const Complex& total, int dim) {
  if (std::abs(total) <= 1e-14 * dim) {
    throw std::domain_error(
        "infidelity derivative: |Tr(U_G^dag V)| = 0, fidelity is not differentiable here");
  }
}

}  // namespace

CMatrix layer_partial(const ControlProblem& problem, const RVector& phi_l, int k) {
  if (k < 0 || k >= problem.control_count()) {
    throw std::invalid_argument("layer_partial: control index out of range");
  }
  return block_partial(problem.layer_hamiltonian(phi_l), problem.control_generator(k));
}

CMatrix layer_second_partial(const ControlProblem& problem, const RVector& phi_l, int k, int k2) {
  if (k < 0 || k >= problem.control_count() || k2 < 0 || k2 >= problem.control_count()) {
    throw std::invalid_argument("layer_second_partial: control index out of range");
  }
  const CMatrix h = problem.layer_hamiltonian(phi_l);
  const CMatrix& ga = problem.control_generator(k);
  const CMatrix& gb = problem.control_generator(k2);
  return block_second(h, ga, gb) + block_second(h, gb, ga);
}

JacobianSet full_jacobian(const ControlProblem& problem, const PulseSequence& pulses) {
  const EvolutionCache cache = build_cache(problem, pulses);
  const int layers = pulses.layers();
  const int controls = problem.control_count();
  JacobianSet set;
  set.layers = layers;
  set.controls = controls;
  set.entries.resize(static_cast<std::size_t>(layers) * controls);
  set.vectorized.resize(static_cast<std::size_t>(layers) * controls);
  set.u_total = cache.u_total;
  for (int l = 0; l < layers; ++l) {
    const CMatrix h = problem.layer_hamiltonian(pulses.controls.row(l).transpose());
    for (int k = 0; k < controls; ++k) {
      CMatrix j = cache.suffix[l] * block_partial(h, problem.control_generator(k)) * cache.prefix[l];
      set.vectorized[l * controls + k] = vectorize_tangent(j, problem.basis());
      set.entries[l * controls + k] = std::move(j);
    }
  }
  return set;
}

RMatrix infidelity_gradient(const ControlProblem& problem, const PulseSequence& pulses) {
  const EvolutionCache cache = build_cache(problem, pulses);
  const TargetTraces traces = target_traces(problem, pulses, cache);
  require_differentiable(traces.total, problem.dim());
  const int layers = pulses.layers();
  const int controls = problem.control_count();
  const double abs_total = std::abs(traces.total);
  RMatrix grad(layers, controls);
  for (int l = 0; l < layers; ++l) {
    for (int k = 0; k < controls; ++k) {
      grad(l, k) = -std::real(std::conj(traces.total) * traces.t[l][k]) /
                   (problem.dim() * abs_total);
    }
  }
  return grad;
}

HessianMatrix infidelity_hessian(const ControlProblem& problem, const PulseSequence& pulses) {
  const EvolutionCache cache = build_cache(problem, pulses);
  const TargetTraces traces = target_traces(problem, pulses, cache);
  require_differentiable(traces.total, problem.dim());

  const int layers = pulses.layers();
  const int controls = problem.control_count();
  const int params = layers * controls;
  const CMatrix& v = problem.target();

  // Second-derivative traces s_ab = Tr((d^2 U_G / dphi_a dphi_b)^dag V).
  RMatrix s_re(params, params);

  // Same layer: symmetrised 3x3 auxiliary block exponentials.
  for (int l = 0; l < layers; ++l) {
    const CMatrix h = problem.layer_hamiltonian(pulses.controls.row(l).transpose());
    const CMatrix m = cache.suffix[l].adjoint() * v * cache.prefix[l].adjoint();
    for (int k = 0; k < controls; ++k) {
      for (int k2 = k; k2 < controls; ++k2) {
        const CMatrix d2 = block_second(h, problem.control_generator(k), problem.control_generator(k2)) +
                           block_second(h, problem.control_generator(k2), problem.control_generator(k));
        const Complex s = frob_inner(d2, m);
        const double value = std::real(std::conj(traces.total) * s);
        s_re(l * controls + k, l * controls + k2) = value;
        s_re(l * controls + k2, l * controls + k) = value;
      }
    }
  }

  // Distinct layers l > l2: two first-derivative insertions.
  for (int l = 1; l < layers; ++l) {
    for (int l2 = 0; l2 < l; ++l2) {
      // mid = U_{l-1} ... U_{l2+1}; expressed through cached prefixes as
      // prefix[l] = mid * U_{l2} * prefix[l2].
      const CMatrix mid = cache.prefix[l] * (cache.unit[l2] * cache.prefix[l2]).adjoint();
      const CMatrix r = cache.suffix[l].adjoint() * v * cache.prefix[l2].adjoint();
      for (int k = 0; k < controls; ++k) {
        // s_ab = Tr(dU_{l2,k2}^dag [mid^dag dU_{l,k}^dag r]).
        const CMatrix a = mid.adjoint() * traces.du[l][k].adjoint() * r;
        for (int k2 = 0; k2 < controls; ++k2) {
          const Complex s = frob_inner(traces.du[l2][k2], a);
          const double value = std::real(std::conj(traces.total) * s);
          s_re(l * controls + k, l2 * controls + k2) = value;
          s_re(l2 * controls + k2, l * controls + k) = value;
        }
      }
    }
  }

  const double abs_total = std::abs(traces.total);
  const double n = problem.dim();
  RMatrix hess(params, params);
  for (int a = 0; a < params; ++a) {
    const Complex ta = traces.t[a / controls][a % controls];
    const double ra = std::real(std::conj(traces.total) * ta);
    for (int b = a; b < params; ++b) {
      const Complex tb = traces.t[b / controls][b % controls];
      const double rb = std::real(std::conj(traces.total) * tb);
      const double first = (std::real(std::conj(tb) * ta) + s_re(a, b)) / abs_total;
      const double second = ra * rb / (abs_total * abs_total * abs_total);
      const double value = -(first - second) / n;
      hess(a, b) = value;
      hess(b, a) = value;
    }
  }
  return HessianMatrix{std::move(hess)};
}

RVector flatten_controls(const RMatrix& controls) {
  RVector flat(controls.size());
  int idx = 0;
  for (int l = 0; l < controls.rows(); ++l) {
    for (int k = 0; k < controls.cols(); ++k) flat[idx++] = controls(l, k);
  }
  return flat;
}

RMatrix unflatten_controls(const RVector& flat, int layers, int controls) {
  if (flat.size() != static_cast<Eigen::Index>(layers) * controls) {
    throw std::invalid_argument("unflatten_controls: size mismatch");
  }
  RMatrix out(layers, controls);
  int idx = 0;
  for (int l = 0; l < layers; ++l) {
    for (int k = 0; k < controls; ++k) out(l, k) = flat[idx++];
  }
  return out;
}

}  // namespace geope
