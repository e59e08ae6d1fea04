#pragma once

#include <cstddef>
#include <thread>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rsimple {

inline int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Data-parallel loop over [0, n). jobs <= 1 runs the serial reference path;
// otherwise iterations are distributed over OpenMP threads. Callers combine
// results with order-independent reductions (max / OR / sum), so the outcome
// does not depend on the schedule.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& body) {
    jobs = resolve_jobs(jobs);
#ifdef _OPENMP
    if (jobs > 1 && n > 1) {
        #pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace rsimple
