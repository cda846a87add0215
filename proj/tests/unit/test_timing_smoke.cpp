#include <doctest.h>

#include <chrono>

#include "geope/derivatives.hpp"
#include "geope/model.hpp"
#include "geope/rng.hpp"

using namespace geope;

namespace {

double seconds_of(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

TEST_SUITE_BEGIN("timing_smoke");

// Wall-clock smoke checks only: the bounds are generous enough to hold on
// slow machines, and the real measurements live in the benchmarks/ targets.
TEST_CASE("jacobian and hessian evaluation complete at interactive speed") {
  ControlProblem problem = rydberg_problem(3, 1.0, make_gate("toffoli", 3), 1e-9);
  Rng rng(77);
  PulseSequence pulses = random_pulses(8, problem.control_count(), 0.5, rng);

  const double jacobian_seconds =
      seconds_of([&] { full_jacobian(problem, pulses); });
  CHECK(jacobian_seconds < 20.0);

  const double hessian_seconds =
      seconds_of([&] { infidelity_hessian(problem, pulses); });
  CHECK(hessian_seconds < 60.0);
}

TEST_SUITE_END();
