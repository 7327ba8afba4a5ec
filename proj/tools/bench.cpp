// serial vs OpenMP comparison for the two hot kernels:
//   - multi-trial homology-deviation batches (trial-level parallelism)
//   - quadratic Weyl sums (closed form, loop-level parallelism)

#include <chrono>
#include <cstdio>
#include <vector>

#include "devlab/deviation.hpp"
#include "devlab/homogeneous.hpp"
#include "devlab/parallel.hpp"
#include "devlab/rng.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double bench_trials(int jobs) {
    auto perm = devlab::LabeledPermutation::parse("ABCD/DCBA");
    const int trials = 16;
    const std::int64_t t_max = 1000000;
    std::vector<double> medians(trials);
    auto body = [&](int t) {
        devlab::Rng rng(devlab::trial_seed(7, static_cast<std::uint64_t>(t)));
        auto iet = devlab::new_iet(perm, rng.simplex(4));
        auto series = devlab::homology_deviation(iet, rng.uniform01(), t_max);
        medians[static_cast<std::size_t>(t)] =
            devlab::fit_exponent(series, 100.0).slope;
    };
    auto t0 = Clock::now();
    if (jobs == 1)
        devlab::run_trials_serial(trials, body);
    else
        devlab::run_trials(trials, jobs, body);
    double dt = seconds_since(t0);
    double acc = 0.0;
    for (double m : medians) acc += m;
    std::printf("  [checksum %.6f]", acc);
    return dt;
}

double bench_weyl(int jobs, double& result) {
    const std::int64_t n = 20000000;
    auto t0 = Clock::now();
    if (jobs == 1)
        result = devlab::weyl_sum_abs_serial(devlab::kGoldenRotation, 0.372, 0.081,
                                             0.559, n);
    else
        result = devlab::weyl_sum_abs_parallel(devlab::kGoldenRotation, 0.372, 0.081,
                                               0.559, n, jobs);
    return seconds_since(t0);
}

} // namespace

int main() {
    int jobs = devlab::hardware_jobs();
    std::printf("hardware jobs: %d\n\n", jobs);

    std::printf("homology-deviation batch (16 trials x 1e6 steps):\n");
    std::printf("  serial:");
    double ts = bench_trials(1);
    std::printf("  %.3f s\n", ts);
    std::printf("  openmp:");
    double tp = bench_trials(jobs);
    std::printf("  %.3f s   speedup %.2fx\n\n", tp, ts / tp);

    double rs = 0.0, rp = 0.0;
    std::printf("weyl sum (2e7 terms):\n");
    double ws = bench_weyl(1, rs);
    std::printf("  serial (iterative):   %.3f s  |S| = %.6f\n", ws, rs);
    double wp = bench_weyl(jobs, rp);
    std::printf("  openmp (closed form): %.3f s  |S| = %.6f   speedup %.2fx\n", wp, rp,
                ws / wp);
    std::printf("  |serial - parallel| = %.3e\n", rs > rp ? rs - rp : rp - rs);
    return 0;
}
