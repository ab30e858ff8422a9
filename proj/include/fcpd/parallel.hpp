#pragma once

#include <functional>

namespace fcpd {

// Number of threads the parallel kernels may use. Honours the FCPD_THREADS
// environment variable (any value in [1, 256], oversubscription allowed);
// otherwise the OpenMP default. Always 1 when built without OpenMP.
int thread_budget();

// Runs fn(i) for i in [0, count). Iterations must be independent; results
// should be written to preallocated slots so the outcome is identical to a
// serial loop. Falls back to a serial loop when OpenMP is unavailable or
// when already inside a parallel region.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace fcpd
