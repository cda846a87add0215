#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geope/model.hpp"

namespace geope {

enum class StepKind { geodesic, gram_schmidt, adam, newton, rfo };

const char* to_string(StepKind kind);

struct TraceRow {
  int iteration = 0;        // 1-based algorithmic step
  double infidelity = 1.0;  // after the update of this step
  StepKind step_kind = StepKind::geodesic;
  double step_size = 0.0;
  double elapsed_ms = 0.0;  // wall time spent in this step
};

enum class RunStatus { solved, max_iters };

/// Per-iteration record of one optimisation run.
struct OptRunTrace {
  std::uint64_t seed = 0;
  std::vector<TraceRow> rows;
  RunStatus status = RunStatus::max_iters;
  std::optional<int> solved_at;
  double total_ms = 0.0;

  /// Sum of per-iteration infidelities up to the solving iteration (or over
  /// every recorded row when unsolved) -- the per-sample term of the mean
  /// cumulative infidelity figure of merit.
  double cumulative_infidelity() const;
};

/// Optional streaming sink; called once per row as it is produced.
using TraceSink = std::function<void(const TraceRow&)>;

struct RunResult {
  PulseSequence pulses;
  OptRunTrace trace;
};

}  // namespace geope
