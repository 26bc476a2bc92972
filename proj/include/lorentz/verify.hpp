#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "lorentz/stats.hpp"

namespace lorentz {

/// Runs the full acceptance suite on the shipped fixture at the pinned
/// thresholds. One report per sub-criterion; a PASS/FAIL line per report is
/// written to `log` as results arrive. All randomness derives from `seed`.
std::vector<TestReport> run_acceptance(std::uint64_t seed, int threads,
                                       std::ostream& log);

}  // namespace lorentz
