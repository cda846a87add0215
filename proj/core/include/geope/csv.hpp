#pragma once

#include <iosfwd>
#include <vector>

#include "geope/experiment.hpp"
#include "geope/hyperopt.hpp"
#include "geope/model.hpp"
#include "geope/trace.hpp"

namespace geope {

/// Every CSV starts with a schema-version comment line, then a header row.

/// `layer,control_index,pauli_word,value`, one row per control coefficient.
void write_pulses_csv(std::ostream& out, const ControlProblem& problem,
                      const PulseSequence& pulses);

/// `iteration,infidelity,step_kind,step_size,elapsed_ms`.
void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, const TraceRow& row);
void write_trace_csv(std::ostream& out, const OptRunTrace& trace);

/// `iteration,cumulative_success`.
void write_success_curve_csv(std::ostream& out, const SuccessCurve& curve);

/// `observation,p,C,samples,seed`.
void write_observations_csv(std::ostream& out, const std::vector<Observation>& observations);

}  // namespace geope
