// Microbenchmarks for the optimisation hot path. The per-iteration costs are
// dominated by the auxiliary block exponentials: the Jacobian scales as
// O(K L N^4)-ish in practice and the Hessian adds the same-layer second
// derivatives on top.

#include <benchmark/benchmark.h>

#include "geope/derivatives.hpp"
#include "geope/geodesic_optimizer.hpp"
#include "geope/model.hpp"
#include "geope/rng.hpp"

using namespace geope;

namespace {

struct Fixture {
  ControlProblem problem;
  PulseSequence pulses;
};

Fixture make_fixture(int qubits, int layers) {
  ControlProblem problem = rydberg_problem(qubits, 1.0, make_gate("qft", qubits), 1e-9);
  Rng rng(1);
  PulseSequence pulses = random_pulses(layers, problem.control_count(), 0.5, rng);
  return Fixture{std::move(problem), std::move(pulses)};
}

void BM_evolve(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(f.problem, f.pulses));
  }
}

void BM_full_jacobian(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_jacobian(f.problem, f.pulses));
  }
}

void BM_infidelity_gradient(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(infidelity_gradient(f.problem, f.pulses));
  }
}

void BM_infidelity_hessian(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(infidelity_hessian(f.problem, f.pulses));
  }
}

void BM_geope_iteration(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    const JacobianSet set = full_jacobian(f.problem, f.pulses);
    const GeodesicFrame frame =
        geodesic_generator(set.u_total, f.problem.target(), f.problem.basis());
    benchmark::DoNotOptimize(solve_update_direction(set, frame.coefficients));
  }
}

}  // namespace

BENCHMARK(BM_evolve)->Args({3, 20})->Args({4, 40})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_full_jacobian)->Args({2, 4})->Args({3, 12})->Args({3, 20})->Args({4, 20})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_infidelity_gradient)->Args({3, 12})->Args({3, 20})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_infidelity_hessian)->Args({3, 12})->Args({3, 20})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_geope_iteration)->Args({3, 20})->Args({4, 20})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
