#include "geope/hyperopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "geope/geodesic_optimizer.hpp"
#include "geope/grape.hpp"
#include "geope/parallel.hpp"
#include "geope/rng.hpp"

namespace geope {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

RMatrix kernel_matrix(const std::vector<double>& x, double signal, double length, double noise) {
  const int n = static_cast<int>(x.size());
  RMatrix k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double d = (x[i] - x[j]) / length;
      const double v = signal * signal * std::exp(-0.5 * d * d);
      k(i, j) = v;
      k(j, i) = v;
    }
    k(i, i) += noise;
  }
  return k;
}

double log_marginal_likelihood(const RMatrix& k, const RVector& y) {
  Eigen::LLT<RMatrix> llt(k);
  if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  const RVector alpha = llt.solve(y);
  double log_det = 0.0;
  const RMatrix l = llt.matrixL();
  for (int i = 0; i < l.rows(); ++i) log_det += std::log(l(i, i));
  return -0.5 * y.dot(alpha) - log_det - 0.5 * y.size() * std::log(kTwoPi);
}

}  // namespace

GpSurrogate GpSurrogate::fit(const std::vector<double>& points,
                             const std::vector<double>& values, double noise) {
  if (points.empty() || points.size() != values.size()) {
    throw std::invalid_argument("GpSurrogate::fit: need matching non-empty observations");
  }
  if (noise < 0.0) throw std::invalid_argument("GpSurrogate::fit: negative noise");

  GpSurrogate gp;
  gp.points_ = points;
  gp.noise_ = noise;

  const int n = static_cast<int>(points.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  double scale = n > 1 ? std::sqrt(var / (n - 1)) : 1.0;
  if (scale < 1e-12) scale = 1.0;
  gp.value_mean_ = mean;
  gp.value_scale_ = scale;

  RVector y(n);
  for (int i = 0; i < n; ++i) y[i] = (values[i] - mean) / scale;

  const double span = std::max(1e-12, *std::max_element(points.begin(), points.end()) -
                                           *std::min_element(points.begin(), points.end()));
  // Marginal likelihood over a small grid; the search space is 1-D and the
  // observation counts are tiny, so a grid is robust and reproducible.
  const double length_grid[] = {0.02, 0.05, 0.1, 0.2, 0.4, 0.8};
  const double signal_grid[] = {0.5, 1.0, 2.0};
  double best_ll = -std::numeric_limits<double>::infinity();
  for (double lf : length_grid) {
    for (double s : signal_grid) {
      const double length = lf * span;
      const double ll = log_marginal_likelihood(kernel_matrix(points, s, length, noise), y);
      if (ll > best_ll) {
        best_ll = ll;
        gp.length_scale_ = length;
        gp.signal_ = s;
      }
    }
  }

  const RMatrix k = kernel_matrix(points, gp.signal_, gp.length_scale_, noise);
  Eigen::LLT<RMatrix> llt(k);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("GpSurrogate::fit: kernel matrix not positive-definite");
  }
  gp.kinv_ = llt.solve(RMatrix::Identity(n, n));
  gp.weights_ = llt.solve(y);
  return gp;
}

GpSurrogate::Posterior GpSurrogate::predict(double p) const {
  const int n = static_cast<int>(points_.size());
  RVector k_star(n);
  for (int i = 0; i < n; ++i) {
    const double d = (p - points_[i]) / length_scale_;
    k_star[i] = signal_ * signal_ * std::exp(-0.5 * d * d);
  }
  Posterior out;
  out.mean = value_mean_ + value_scale_ * k_star.dot(weights_);
  const double latent = signal_ * signal_ - k_star.dot(kinv_ * k_star);
  out.stddev = value_scale_ * std::sqrt(std::max(0.0, latent));
  return out;
}

double ucb_select(const GpSurrogate& surrogate, double lo, double hi, double kappa_bo) {
  if (!(lo < hi)) throw std::invalid_argument("ucb_select: need lo < hi");
  if (surrogate.observation_count() < 1) {
    throw std::invalid_argument("ucb_select: surrogate has no observations");
  }
  constexpr int kGridPoints = 512;
  double best_p = lo;
  double best_score = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGridPoints; ++i) {
    const double p = lo + (hi - lo) * static_cast<double>(i) / (kGridPoints - 1);
    const GpSurrogate::Posterior post = surrogate.predict(p);
    const double score = post.mean - kappa_bo * post.stddev;
    if (score < best_score) {
      best_score = score;
      best_p = p;
    }
  }
  return best_p;
}

SearchResult search(const Objective& objective, const SearchConfig& config) {
  if (!(config.lo < config.hi)) throw std::invalid_argument("search: need lo < hi");
  if (config.initial_points < 1) throw std::invalid_argument("search: initial_points must be >= 1");
  if (config.budget < config.initial_points) {
    throw std::invalid_argument("search: budget must cover the initial points");
  }

  Rng rng(config.seed);
  SearchResult result;
  std::vector<double> xs, ys;
  xs.reserve(config.budget);
  ys.reserve(config.budget);

  for (int i = 0; i < config.budget; ++i) {
    double p;
    if (i < config.initial_points) {
      p = rng.uniform(config.lo, config.hi);
    } else {
      const GpSurrogate gp = GpSurrogate::fit(xs, ys, config.alpha_bo);
      p = ucb_select(gp, config.lo, config.hi, config.kappa_bo);
    }
    // Non-overlapping seed blocks keep every observation independently
    // re-runnable.
    const std::uint64_t obs_seed =
        config.seed + static_cast<std::uint64_t>(i) * config.samples_per_observation;
    const double value = objective(p, obs_seed);
    xs.push_back(p);
    ys.push_back(value);
    result.log.push_back(Observation{i, p, value, config.samples_per_observation, obs_seed});
  }

  int best = 0;
  for (int i = 1; i < static_cast<int>(ys.size()); ++i) {
    if (ys[i] < ys[best]) best = i;
  }
  result.best_p = xs[best];
  result.best_value = ys[best];
  return result;
}

Method method_from_string(const std::string& name) {
  if (name == "geope") return Method::geope;
  if (name == "grape-adam") return Method::grape_adam;
  if (name == "grape-nr") return Method::grape_newton;
  if (name == "grape-rfo") return Method::grape_rfo;
  throw std::invalid_argument("method_from_string: unknown method '" + name + "'");
}

const char* to_string(Method method) {
  switch (method) {
    case Method::geope: return "geope";
    case Method::grape_adam: return "grape-adam";
    case Method::grape_newton: return "grape-nr";
    case Method::grape_rfo: return "grape-rfo";
  }
  throw std::invalid_argument("to_string(Method): invalid method");
}

double mean_cumulative_infidelity(Method method, const ControlProblem& problem, int layers,
                                  double p, int samples, int cap, std::uint64_t seed,
                                  unsigned workers) {
  if (samples < 1) throw std::invalid_argument("mean_cumulative_infidelity: samples must be >= 1");
  std::vector<double> per_sample(samples, 0.0);
  parallel_for_index(samples, workers, [&](std::size_t a) {
    const std::uint64_t run_seed = seed + a;
    OptRunTrace trace;
    switch (method) {
      case Method::geope: {
        GeopeConfig cfg;
        cfg.layers = layers;
        cfg.eta_max = p;
        cfg.epsilon = problem.epsilon();
        cfg.max_iters = cap;
        cfg.seed = run_seed;
        trace = run_geope(problem, cfg).trace;
        break;
      }
      case Method::grape_adam: {
        AdamConfig cfg;
        cfg.layers = layers;
        cfg.learning_rate = p;
        cfg.epsilon = problem.epsilon();
        cfg.max_iters = cap;
        cfg.seed = run_seed;
        trace = run_grape_adam(problem, cfg).trace;
        break;
      }
      case Method::grape_newton: {
        NewtonConfig cfg;
        cfg.layers = layers;
        cfg.delta = p;
        cfg.epsilon = problem.epsilon();
        cfg.max_iters = cap;
        cfg.seed = run_seed;
        trace = run_grape_newton(problem, cfg).trace;
        break;
      }
      case Method::grape_rfo: {
        RfoConfig cfg;
        cfg.layers = layers;
        cfg.kappa = p;
        cfg.epsilon = problem.epsilon();
        cfg.max_iters = cap;
        cfg.seed = run_seed;
        trace = run_grape_rfo(problem, cfg).trace;
        break;
      }
    }
    per_sample[a] = trace.cumulative_infidelity();
  });
  double sum = 0.0;
  for (double c : per_sample) sum += c;
  return sum / samples;
}

Objective make_control_objective(Method method, const ControlProblem& problem, int layers,
                                 int samples, int cap, unsigned workers) {
  // Capture the problem by value so the objective outlives the caller's copy.
  return [method, problem, layers, samples, cap, workers](double p, std::uint64_t seed) {
    return mean_cumulative_infidelity(method, problem, layers, p, samples, cap, seed, workers);
  };
}

}  // namespace geope
