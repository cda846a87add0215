#include "geope/geodesic_optimizer.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "geope/linalg.hpp"

namespace geope {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

GeodesicFrame geodesic_generator(const CMatrix& u_g, const CMatrix& v, const PauliBasis& basis) {
  GeodesicFrame frame;
  frame.generator = logm_unitary_principal(u_g.adjoint() * v);
  const int dim = basis.dim();
  const Complex mean_phase = frame.generator.trace() / static_cast<double>(dim);
  const CMatrix traceless = frame.generator - mean_phase * CMatrix::Identity(dim, dim);
  frame.coefficients = vectorize_tangent(u_g * traceless, basis);
  return frame;
}

UpdateDirection solve_update_direction(const JacobianSet& jacobians, const CVector& gamma) {
  const int params = jacobians.layers * jacobians.controls;
  if (params < 1) throw std::invalid_argument("solve_update_direction: empty Jacobian set");
  const int basis_size = static_cast<int>(gamma.size());

  // Real and imaginary parts stacked: the update coefficients are real while
  // the coefficient vectors are complex. The target carries the factor i that
  // moves the geodesic generator into the tangent space at U_G.
  RMatrix a(2 * basis_size, params);
  double jac_norm = 0.0;
  for (int p = 0; p < params; ++p) {
    const CVector& j = jacobians.vectorized[p];
    if (j.size() != basis_size) {
      throw std::invalid_argument("solve_update_direction: coefficient length mismatch");
    }
    a.col(p).head(basis_size) = j.real();
    a.col(p).tail(basis_size) = j.imag();
    jac_norm += a.col(p).squaredNorm();
  }
  if (jac_norm <= 0.0) {
    throw std::invalid_argument("solve_update_direction: all Jacobian coefficients are zero");
  }
  RVector b(2 * basis_size);
  b.head(basis_size) = -gamma.imag();  // Re(i*gamma)
  b.tail(basis_size) = gamma.real();   // Im(i*gamma)

  const RVector solution = lstsq_min_norm(a, b);
  UpdateDirection out;
  out.magnitude = solution.norm();
  out.residual = (a * solution - b).norm();
  if (out.magnitude == 0.0) {
    // Degenerate (gamma orthogonal to every achievable direction); report a
    // zero direction and let the caller fall back to the escape step.
    out.direction = unflatten_controls(solution, jacobians.layers, jacobians.controls);
  } else {
    out.direction = unflatten_controls(solution / out.magnitude, jacobians.layers,
                                       jacobians.controls);
  }
  return out;
}

RMatrix gram_schmidt_escape(const CVector& gamma, const RestrictionSet& restriction, int layers,
                            Rng& rng) {
  if (layers < 1) throw std::invalid_argument("gram_schmidt_escape: need at least one layer");
  const int controls = restriction.size();
  const double gamma_norm = gamma.norm();
  if (!(gamma_norm > 0.0)) {
    throw std::invalid_argument("gram_schmidt_escape: zero geodesic coefficients");
  }

  // Orthonormal basis of the restricted geodesic plane span{Re g, Im g}.
  RVector g_re(controls), g_im(controls);
  for (int k = 0; k < controls; ++k) {
    g_re[k] = gamma[restriction.index(k)].real();
    g_im[k] = gamma[restriction.index(k)].imag();
  }
  std::vector<RVector> plane;
  for (RVector v : {g_re, g_im}) {
    for (const RVector& q : plane) v -= q.dot(v) * q;
    const double norm = v.norm();
    if (norm > 1e-12 * gamma_norm) plane.push_back(v / norm);
  }

  RMatrix direction(layers, controls);
  for (int attempt = 0; attempt < 32; ++attempt) {
    for (int l = 0; l < layers; ++l) {
      RVector r(controls);
      for (int k = 0; k < controls; ++k) r[k] = rng.uniform(-1.0, 1.0);
      for (const RVector& q : plane) r -= q.dot(r) * q;
      direction.row(l) = r.transpose();
    }
    const double norm = direction.norm();
    if (norm > 1e-10 * std::sqrt(static_cast<double>(layers) * controls)) {
      return direction / norm;
    }
    // Degenerate draw (restriction spanned by the geodesic plane): redraw.
  }
  // The restricted space offers no orthogonal direction; any restricted move
  // is an escape of last resort.
  for (int l = 0; l < layers; ++l) {
    for (int k = 0; k < controls; ++k) direction(l, k) = rng.uniform(-1.0, 1.0);
  }
  return direction / direction.norm();
}

RunResult run_geope(const ControlProblem& problem, const GeopeConfig& config,
                    const TraceSink& sink) {
  if (config.max_iters < 1) throw std::invalid_argument("run_geope: max_iters must be >= 1");
  if (config.layers < 1) throw std::invalid_argument("run_geope: layers must be >= 1");
  if (!(config.eta_max > 0.0)) throw std::invalid_argument("run_geope: eta_max must be positive");
  if (!(config.gs_factor > 0.0)) throw std::invalid_argument("run_geope: gs_factor must be positive");

  const auto run_start = Clock::now();
  Rng rng(config.seed);

  RunResult result;
  result.trace.seed = config.seed;
  result.pulses = random_pulses(config.layers, problem.control_count(), config.init_scale, rng);

  double current_fidelity = fidelity(problem, result.pulses);
  if (current_fidelity > 1.0 - config.epsilon) {
    result.trace.status = RunStatus::solved;
    result.trace.solved_at = 0;
    result.trace.total_ms = ms_since(run_start);
    return result;
  }

  GoldenOptions line_search;
  line_search.tol = config.line_search_tol_factor * config.eta_max;
  line_search.scan_points = config.line_search_scan_points;

  for (int m = 1; m <= config.max_iters; ++m) {
    const auto step_start = Clock::now();

    const JacobianSet jacobians = full_jacobian(problem, result.pulses);
    const GeodesicFrame geodesic =
        geodesic_generator(jacobians.u_total, problem.target(), problem.basis());

    TraceRow row;
    row.iteration = m;

    auto take_escape_step = [&] {
      const RMatrix escape = gram_schmidt_escape(geodesic.coefficients, problem.restriction(),
                                                 config.layers, rng);
      const double eta_gs = config.gs_factor * config.eta_max;
      result.pulses.controls += eta_gs * escape;
      current_fidelity = fidelity(problem, result.pulses);
      row.step_kind = StepKind::gram_schmidt;
      row.step_size = eta_gs;
    };

    bool improved = false;
    if (geodesic.coefficients.norm() > 0.0) {
      const UpdateDirection update = solve_update_direction(jacobians, geodesic.coefficients);
      if (update.magnitude > 0.0) {
        const GoldenResult line = golden_section_max(
            [&](double eta) {
              PulseSequence probe{result.pulses.controls + eta * update.direction};
              return fidelity(problem, probe);
            },
            0.0, config.eta_max, line_search);
        if (line.max > current_fidelity + 1e-14) {
          result.pulses.controls += line.argmax * update.direction;
          current_fidelity = line.max;
          row.step_kind = StepKind::geodesic;
          row.step_size = line.argmax;
          improved = true;
        }
      }
      if (!improved) take_escape_step();
    } else {
      // Zero geodesic coefficients mean U_G already matches the target up to
      // a global phase; leave the controls alone and let the fidelity check
      // below terminate the run.
      row.step_kind = StepKind::geodesic;
      row.step_size = 0.0;
    }

    row.infidelity = 1.0 - current_fidelity;
    row.elapsed_ms = ms_since(step_start);
    result.trace.rows.push_back(row);
    if (sink) sink(row);

    if (current_fidelity > 1.0 - config.epsilon) {
      result.trace.status = RunStatus::solved;
      result.trace.solved_at = m;
      break;
    }
  }

  result.trace.total_ms = ms_since(run_start);
  return result;
}

}  // namespace geope
