#include "geope/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "geope/geodesic_optimizer.hpp"
#include "geope/grape.hpp"
#include "geope/parallel.hpp"

namespace geope {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void config_error(const std::string& origin, const std::string& message) {
  throw std::runtime_error("config " + origin + ": " + message);
}

double parse_double(const std::string& origin, const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    config_error(origin, "key '" + key + "' expects a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& origin, const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    config_error(origin, "key '" + key + "' expects an integer, got '" + value + "'");
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

ExperimentConfig ExperimentConfig::parse(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::map<std::string, std::string> pairs;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      config_error(origin, "line " + std::to_string(line_number) + " is not 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      config_error(origin, "line " + std::to_string(line_number) + " has an empty key or value");
    }
    if (!pairs.emplace(key, value).second) {
      config_error(origin, "duplicate key '" + key + "'");
    }
  }

  for (const auto& [key, value] : pairs) {
    if (key == "gate") cfg.gate = value;
    else if (key == "qubits") cfg.qubits = static_cast<int>(parse_int(origin, key, value));
    else if (key == "lattice") cfg.lattice = value;
    else if (key == "j0") cfg.coupling_scale = parse_double(origin, key, value);
    else if (key == "layers") cfg.layers = static_cast<int>(parse_int(origin, key, value));
    else if (key == "method") cfg.method = value;
    else if (key == "epsilon") cfg.epsilon = parse_double(origin, key, value);
    else if (key == "max_iters") cfg.max_iters = static_cast<int>(parse_int(origin, key, value));
    else if (key == "samples") cfg.samples = static_cast<int>(parse_int(origin, key, value));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(origin, key, value));
    else if (key == "out") cfg.out_dir = value;
    else if (key == "init_scale") cfg.init_scale = parse_double(origin, key, value);
    else if (key == "eta_max") cfg.eta_max = parse_double(origin, key, value);
    else if (key == "gs_factor") cfg.gs_factor = parse_double(origin, key, value);
    else if (key == "learning_rate") cfg.learning_rate = parse_double(origin, key, value);
    else if (key == "delta") cfg.delta = parse_double(origin, key, value);
    else if (key == "kappa") cfg.kappa = parse_double(origin, key, value);
    else if (key == "search_lo") cfg.search_lo = parse_double(origin, key, value);
    else if (key == "search_hi") cfg.search_hi = parse_double(origin, key, value);
    else if (key == "search_budget") cfg.search_budget = static_cast<int>(parse_int(origin, key, value));
    else if (key == "search_n0") cfg.search_initial = static_cast<int>(parse_int(origin, key, value));
    else if (key == "kappa_bo") cfg.kappa_bo = parse_double(origin, key, value);
    else if (key == "alpha_bo") cfg.alpha_bo = parse_double(origin, key, value);
    else if (key == "samples_per_observation") {
      cfg.samples_per_observation = static_cast<int>(parse_int(origin, key, value));
    } else {
      config_error(origin, "unknown key '" + key + "'");
    }
  }

  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  if (gate != "toffoli" && gate != "ccz" && gate != "qft") {
    throw std::runtime_error("config: unknown gate '" + gate + "' (toffoli|ccz|qft)");
  }
  if (lattice != "rydberg") {
    throw std::runtime_error("config: unknown lattice '" + lattice + "' (rydberg)");
  }
  if (qubits < 3 || qubits > 6) {
    throw std::runtime_error("config: qubits must be in 3..6 for the rydberg lattice");
  }
  if ((gate == "toffoli" || gate == "ccz") && qubits != 3) {
    throw std::runtime_error("config: gate '" + gate + "' requires qubits = 3");
  }
  if (layers < 1) throw std::runtime_error("config: layers must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::runtime_error("config: epsilon must be in (0,1)");
  if (max_iters < 1) throw std::runtime_error("config: max_iters must be >= 1");
  if (samples < 1) throw std::runtime_error("config: samples must be >= 1");
  if (!(coupling_scale > 0.0)) throw std::runtime_error("config: j0 must be positive");
  if (!(init_scale >= 0.0)) throw std::runtime_error("config: init_scale must be >= 0");

  const Method m = method_enum();  // throws on unknown method
  switch (m) {
    case Method::geope:
      if (!eta_max) throw std::runtime_error("config: method geope requires eta_max");
      if (!(*eta_max > 0.0)) throw std::runtime_error("config: eta_max must be positive");
      if (!(gs_factor > 0.0)) throw std::runtime_error("config: gs_factor must be positive");
      break;
    case Method::grape_adam:
      if (!learning_rate) throw std::runtime_error("config: method grape-adam requires learning_rate");
      if (!(*learning_rate > 0.0)) throw std::runtime_error("config: learning_rate must be positive");
      break;
    case Method::grape_newton:
      if (!delta) throw std::runtime_error("config: method grape-nr requires delta");
      if (*delta < 0.0) throw std::runtime_error("config: delta must be >= 0");
      break;
    case Method::grape_rfo:
      if (!kappa) throw std::runtime_error("config: method grape-rfo requires kappa");
      if (!(*kappa > 1.0)) throw std::runtime_error("config: kappa must exceed 1");
      break;
  }
  if (search_lo && search_hi && !(*search_lo < *search_hi)) {
    throw std::runtime_error("config: search_lo must be below search_hi");
  }
  if (search_budget < search_initial) {
    throw std::runtime_error("config: search_budget must cover search_n0 initial points");
  }
  if (search_initial < 1) throw std::runtime_error("config: search_n0 must be >= 1");
  if (samples_per_observation < 1) {
    throw std::runtime_error("config: samples_per_observation must be >= 1");
  }
}

double ExperimentConfig::hyperparameter() const {
  switch (method_enum()) {
    case Method::geope: return *eta_max;
    case Method::grape_adam: return *learning_rate;
    case Method::grape_newton: return *delta;
    case Method::grape_rfo: return *kappa;
  }
  throw std::logic_error("hyperparameter: unreachable");
}

ControlProblem ExperimentConfig::make_problem() const {
  return rydberg_problem(qubits, coupling_scale, make_gate(gate, qubits), epsilon);
}

RunResult ExperimentConfig::run_once(std::uint64_t run_seed, const TraceSink& sink) const {
  const ControlProblem problem = make_problem();
  switch (method_enum()) {
    case Method::geope: {
      GeopeConfig cfg;
      cfg.layers = layers;
      cfg.eta_max = *eta_max;
      cfg.gs_factor = gs_factor;
      cfg.epsilon = epsilon;
      cfg.max_iters = max_iters;
      cfg.init_scale = init_scale;
      cfg.seed = run_seed;
      return run_geope(problem, cfg, sink);
    }
    case Method::grape_adam: {
      AdamConfig cfg;
      cfg.layers = layers;
      cfg.learning_rate = *learning_rate;
      cfg.epsilon = epsilon;
      cfg.max_iters = max_iters;
      cfg.init_scale = init_scale;
      cfg.seed = run_seed;
      return run_grape_adam(problem, cfg, sink);
    }
    case Method::grape_newton: {
      NewtonConfig cfg;
      cfg.layers = layers;
      cfg.delta = *delta;
      cfg.epsilon = epsilon;
      cfg.max_iters = max_iters;
      cfg.init_scale = init_scale;
      cfg.seed = run_seed;
      return run_grape_newton(problem, cfg, sink);
    }
    case Method::grape_rfo: {
      RfoConfig cfg;
      cfg.layers = layers;
      cfg.kappa = *kappa;
      cfg.epsilon = epsilon;
      cfg.max_iters = max_iters;
      cfg.init_scale = init_scale;
      cfg.seed = run_seed;
      return run_grape_rfo(problem, cfg, sink);
    }
  }
  throw std::logic_error("run_once: unreachable");
}

SuccessCurve aggregate_success(const std::vector<OptRunTrace>& traces, int max_iters) {
  SuccessCurve curve;
  curve.cumulative.assign(max_iters + 1, 0.0);
  if (traces.empty()) return curve;
  for (const OptRunTrace& trace : traces) {
    if (trace.status == RunStatus::solved && trace.solved_at) {
      const int at = std::min(*trace.solved_at, max_iters);
      for (int i = at; i <= max_iters; ++i) curve.cumulative[i] += 1.0;
    }
  }
  for (double& value : curve.cumulative) value /= traces.size();
  return curve;
}

BenchmarkResult run_benchmark(const ExperimentConfig& config, unsigned workers) {
  BenchmarkResult result;
  result.runs.resize(config.samples);
  // Each sample owns its run; per-sample seeds make any subset independently
  // re-runnable.
  parallel_for_index(config.samples, workers, [&](std::size_t index) {
    result.runs[index] = config.run_once(config.seed + index);
  });
  std::vector<OptRunTrace> traces;
  traces.reserve(result.runs.size());
  for (const RunResult& run : result.runs) traces.push_back(run.trace);
  result.curve = aggregate_success(traces, config.max_iters);
  return result;
}

}  // namespace geope
