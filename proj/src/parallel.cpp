#include "fcpd/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef FCPD_HAVE_OPENMP
#include <omp.h>
#endif

namespace fcpd {

int thread_budget() {
#ifdef FCPD_HAVE_OPENMP
    int budget = omp_get_max_threads();
    if (const char* env = std::getenv("FCPD_THREADS")) {
        try {
            int requested = std::stoi(env);
            // Oversubscription is allowed on purpose: it is how the parallel
            // path gets exercised on single-core CI boxes.
            if (requested >= 1) budget = std::min(requested, 256);
        } catch (...) {
            // unparsable value: keep the OpenMP default
        }
    }
    return budget < 1 ? 1 : budget;
#else
    return 1;
#endif
}

void parallel_for(int count, const std::function<void(int)>& fn) {
    if (count <= 0) return;
#ifdef FCPD_HAVE_OPENMP
    if (!omp_in_parallel() && thread_budget() > 1 && count > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_budget())
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
#endif
    for (int i = 0; i < count; ++i) fn(i);
}

}  // namespace fcpd
