#include "geope/csv.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace geope {

namespace {

/// Shortest round-trippable decimal form.
std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  double parsed = 0.0;
  std::sscanf(buf, "%lg", &parsed);
  if (parsed == x) {
    for (int precision = 1; precision < 17; ++precision) {
      char probe[32];
      std::snprintf(probe, sizeof(probe), "%.*g", precision, x);
      std::sscanf(probe, "%lg", &parsed);
      if (parsed == x) return probe;
    }
  }
  return buf;
}

}  // namespace

void write_pulses_csv(std::ostream& out, const ControlProblem& problem,
                      const PulseSequence& pulses) {
  out << "# schema: geope.pulses.v1\n";
  out << "layer,control_index,pauli_word,value\n";
  for (int l = 0; l < pulses.layers(); ++l) {
    for (int k = 0; k < pulses.controls_per_layer(); ++k) {
      out << (l + 1) << ',' << k << ','
          << problem.basis().word(problem.restriction().index(k)).str() << ','
          << format_double(pulses.controls(l, k)) << '\n';
    }
  }
}

void write_trace_header(std::ostream& out) {
  out << "# schema: geope.trace.v1\n";
  out << "iteration,infidelity,step_kind,step_size,elapsed_ms\n";
}

void write_trace_row(std::ostream& out, const TraceRow& row) {
  out << row.iteration << ',' << format_double(row.infidelity) << ',' << to_string(row.step_kind)
      << ',' << format_double(row.step_size) << ',' << format_double(row.elapsed_ms) << '\n';
}

void write_trace_csv(std::ostream& out, const OptRunTrace& trace) {
  write_trace_header(out);
  for (const TraceRow& row : trace.rows) write_trace_row(out, row);
}

void write_success_curve_csv(std::ostream& out, const SuccessCurve& curve) {
  out << "# schema: geope.success-curve.v1\n";
  out << "iteration,cumulative_success\n";
  for (std::size_t i = 0; i < curve.cumulative.size(); ++i) {
    out << i << ',' << format_double(curve.cumulative[i]) << '\n';
  }
}

void write_observations_csv(std::ostream& out, const std::vector<Observation>& observations) {
  out << "# schema: geope.hypersearch.v1\n";
  out << "observation,p,C,samples,seed\n";
  for (const Observation& obs : observations) {
    out << obs.index << ',' << format_double(obs.p) << ',' << format_double(obs.value) << ','
        << obs.samples << ',' << obs.seed << '\n';
  }
}

}  // namespace geope
