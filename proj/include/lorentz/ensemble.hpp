#pragma once

#include <cstdint>
#include <functional>

namespace lorentz {

/// Worker count: LORENTZLAB_THREADS env override, else hardware concurrency
/// capped at 8.
int default_threads();

/// Runs fn(i) for every sample index over a worker pool. Results must be
/// written into per-index slots by the caller, which makes the outcome
/// independent of scheduling and thread count.
void parallel_for_samples(std::int64_t samples, int threads,
                          const std::function<void(std::int64_t)>& fn);

}  // namespace lorentz
