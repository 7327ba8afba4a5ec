#ifndef DEVLAB_PARALLEL_HPP
#define DEVLAB_PARALLEL_HPP

#include <exception>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace devlab {

inline int hardware_jobs() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Serial reference runner; the parallel runner must produce bit-identical
// per-trial results (trials share nothing and write only their own slot).
template <class F>
void run_trials_serial(int n_trials, F&& fn) {
    for (int t = 0; t < n_trials; ++t) fn(t);
}

template <class F>
void run_trials(int n_trials, int jobs, F&& fn) {
    if (jobs <= 1 || n_trials <= 1) {
        run_trials_serial(n_trials, fn);
        return;
    }
#ifdef _OPENMP
    std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (int t = 0; t < n_trials; ++t) {
        try {
            fn(t);
        } catch (...) {
#pragma omp critical
            {
                if (!first_error) first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    (void)jobs;
    run_trials_serial(n_trials, fn);
#endif
}

} // namespace devlab

#endif
