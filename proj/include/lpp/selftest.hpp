#pragma once

#include "lpp/report.hpp"

namespace lpp {

// Exact deterministic identity suite: DP vs exhaustive path enumeration,
// leftmost/rightmost dominance against enumerated optima, stationary
// recovery/additivity, queueing conservation, and increment monotonicity.
// All checks are deterministic; rows carry zero (or the documented rounding)
// tolerances.
std::vector<ReportRow> run_exact_suite(uint64_t seed);

}  // namespace lpp
