#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "geope/geope.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out_override;
  unsigned workers = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", args.seed_override, "override the base seed");
  cmd->add_option("--out", args.out_override, "override the output directory");
  cmd->add_option("--workers", args.workers, "worker threads (0 = hardware concurrency)");
}

geope::ExperimentConfig load_config(const CommonArgs& args) {
  geope::ExperimentConfig cfg = geope::ExperimentConfig::load(args.config_path);
  if (args.seed_override) cfg.seed = *args.seed_override;
  if (args.out_override) cfg.out_dir = *args.out_override;
  return cfg;
}

fs::path ensure_out_dir(const geope::ExperimentConfig& cfg) {
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
  return out;
}

void print_run_summary(const geope::OptRunTrace& trace) {
  if (trace.status == geope::RunStatus::solved) {
    std::cout << "solved at iteration " << *trace.solved_at;
  } else {
    std::cout << "not solved within " << trace.rows.size() << " iterations";
  }
  if (!trace.rows.empty()) {
    std::cout << " (final infidelity " << trace.rows.back().infidelity << ")";
  }
  std::cout << " in " << trace.total_ms << " ms\n";
}

int cmd_solve(const CommonArgs& args) {
  const geope::ExperimentConfig cfg = load_config(args);
  const fs::path dir = ensure_out_dir(cfg);
  const std::string tag = "seed" + std::to_string(cfg.seed);

  std::ofstream trace_out = open_output(dir / ("trace_" + tag + ".csv"));
  geope::write_trace_header(trace_out);
  // Trace rows stream to the file as the optimiser produces them.
  const geope::RunResult result = cfg.run_once(
      cfg.seed, [&](const geope::TraceRow& row) { geope::write_trace_row(trace_out, row); });

  if (result.trace.status == geope::RunStatus::solved) {
    const geope::ControlProblem problem = cfg.make_problem();
    std::ofstream pulse_out = open_output(dir / ("pulses_" + tag + ".csv"));
    geope::write_pulses_csv(pulse_out, problem, result.pulses);
  }
  print_run_summary(result.trace);
  return 0;
}

int cmd_benchmark(const CommonArgs& args) {
  const geope::ExperimentConfig cfg = load_config(args);
  const fs::path dir = ensure_out_dir(cfg);

  const geope::BenchmarkResult result = geope::run_benchmark(cfg, args.workers);
  for (int i = 0; i < cfg.samples; ++i) {
    const std::uint64_t seed = cfg.seed + i;
    std::ofstream trace_out = open_output(dir / ("trace_seed" + std::to_string(seed) + ".csv"));
    geope::write_trace_csv(trace_out, result.runs[i].trace);
  }
  std::ofstream curve_out = open_output(dir / "success_curve.csv");
  geope::write_success_curve_csv(curve_out, result.curve);

  int solved = 0;
  for (const geope::RunResult& run : result.runs) {
    if (run.trace.status == geope::RunStatus::solved) ++solved;
  }
  std::cout << solved << "/" << cfg.samples << " runs solved; final cumulative success "
            << result.curve.cumulative.back() << "\n";
  return 0;
}

int cmd_hypersearch(const CommonArgs& args) {
  const geope::ExperimentConfig cfg = load_config(args);
  if (!cfg.search_lo || !cfg.search_hi) {
    throw std::runtime_error("config: hypersearch requires search_lo and search_hi");
  }
  const fs::path dir = ensure_out_dir(cfg);

  const geope::ControlProblem problem = cfg.make_problem();
  const geope::Objective objective =
      geope::make_control_objective(cfg.method_enum(), problem, cfg.layers,
                                    cfg.samples_per_observation, cfg.max_iters, args.workers);
  geope::SearchConfig search_cfg;
  search_cfg.lo = *cfg.search_lo;
  search_cfg.hi = *cfg.search_hi;
  search_cfg.initial_points = cfg.search_initial;
  search_cfg.kappa_bo = cfg.kappa_bo;
  search_cfg.alpha_bo = cfg.alpha_bo;
  search_cfg.samples_per_observation = cfg.samples_per_observation;
  search_cfg.iteration_cap = cfg.max_iters;
  search_cfg.budget = cfg.search_budget;
  search_cfg.seed = cfg.seed;
  search_cfg.workers = args.workers;

  const geope::SearchResult result = geope::search(objective, search_cfg);
  std::ofstream obs_out = open_output(dir / "observations.csv");
  geope::write_observations_csv(obs_out, result.log);
  std::cout << "best " << cfg.method << " hyperparameter " << result.best_p
            << " with mean cumulative infidelity " << result.best_value << "\n";
  return 0;
}

int cmd_export_pulses(const CommonArgs& args) {
  const geope::ExperimentConfig cfg = load_config(args);
  const fs::path dir = ensure_out_dir(cfg);

  const geope::RunResult result = cfg.run_once(cfg.seed);
  if (result.trace.status != geope::RunStatus::solved) {
    std::cerr << "export-pulses: run did not reach a solution\n";
    return 2;
  }
  const geope::ControlProblem problem = cfg.make_problem();
  const fs::path path = dir / ("pulses_seed" + std::to_string(cfg.seed) + ".csv");
  std::ofstream out = open_output(path);
  geope::write_pulses_csv(out, problem, result.pulses);
  std::cout << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse engineering for multi-qubit gates: geodesic updates and GRAPE baselines"};
  app.require_subcommand(1);

  CommonArgs solve_args, bench_args, hyper_args, export_args;
  CLI::App* solve = app.add_subcommand("solve", "run one seeded optimisation");
  add_common(solve, solve_args);
  CLI::App* bench = app.add_subcommand("benchmark", "run seeded samples and aggregate success");
  add_common(bench, bench_args);
  CLI::App* hyper = app.add_subcommand("hypersearch", "Bayesian hyperparameter search");
  add_common(hyper, hyper_args);
  CLI::App* exporter = app.add_subcommand("export-pulses", "solve and write the pulse table only");
  add_common(exporter, export_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(solve_args);
    if (bench->parsed()) return cmd_benchmark(bench_args);
    if (hyper->parsed()) return cmd_hypersearch(hyper_args);
    if (exporter->parsed()) return cmd_export_pulses(export_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
