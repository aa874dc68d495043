#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spreadlab {

// Worker count for parallel kernels: SPREADLAB_THREADS caps the OpenMP
// default when set. Every kernel writes per-item results to preassigned
// slots (or per-thread integer counters) and reduces serially, so output is
// identical for any worker count.
inline int worker_count() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("SPREADLAB_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0 && cap < n) n = cap;
    }
    return n;
#else
    return 1;
#endif
}

}  // namespace spreadlab
