#include "geope/trace.hpp"

#include <stdexcept>

namespace geope {

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::geodesic: return "geodesic";
    case StepKind::gram_schmidt: return "gram_schmidt";
    case StepKind::adam: return "adam";
    case StepKind::newton: return "newton";
    case StepKind::rfo: return "rfo";
  }
  throw std::invalid_argument("to_string(StepKind): invalid kind");
}

double OptRunTrace::cumulative_infidelity() const {
  double sum = 0.0;
  for (const TraceRow& row : rows) {
    sum += row.infidelity;
    if (solved_at && row.iteration >= *solved_at) break;
  }
  return sum;
}

}  // namespace geope
