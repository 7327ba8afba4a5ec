#ifndef DEVLAB_HOMOGENEOUS_HPP
#define DEVLAB_HOMOGENEOUS_HPP

#include <cstdint>
#include <vector>

#include "devlab/deviation.hpp"

namespace devlab {

struct ContinuedFraction {
    double alpha;
    std::vector<std::int64_t> quotients;   // a_1, a_2, ...
    std::vector<std::int64_t> p, q;        // convergents p_n / q_n
};

// Gauss-map expansion with the standard convergent recurrence; throws
// RationalAlpha when the tail remainder drops below 1e-14 before n terms.
ContinuedFraction continued_fraction(double alpha, int n);

struct DenjoyKoksmaLevel {
    std::int64_t q;
    double abs_sum;   // |S_q f| along the rotation orbit
    double bound;     // Var(f) + 1e-8
    bool pass;
};

struct DenjoyKoksmaReport {
    std::vector<DenjoyKoksmaLevel> levels;
    bool all_pass;
    double worst_excess; // max(|S_q| - Var(f)), negative when comfortably inside
};

DenjoyKoksmaReport denjoy_koksma_check(double alpha, const Observable& f,
                                       double x0, int n_levels);

/**
 * Time-one return map of the Heisenberg nilflow on the 2-torus:
 * (x, y) -> (x + alpha, y + x + beta), both coordinates mod 1.
 */
struct SkewOrbitState {
    double alpha, beta;
    double x, y;

    void step() {
        double ny = y + x + beta;
        ny -= static_cast<std::int64_t>(ny);
        if (ny < 0.0) ny += 1.0;
        double nx = x + alpha;
        if (nx >= 1.0) nx -= 1.0;
        x = nx;
        y = ny;
    }
};

// closed-form phase y_k = y0 + k beta + k x0 + alpha k(k-1)/2 mod 1,
// evaluated in double-double arithmetic
double quadratic_phase(double alpha, double beta, double x0, double y0,
                       std::int64_t k);

// |sum_{k<T_j} e^{2 pi i y_k}| at the schedule checkpoints
DeviationSeries heisenberg_sum(double alpha, double beta, double x0, double y0,
                               std::int64_t t_max, double schedule_ratio = 1.25);

// full-sum kernels (benchmark + cross-check): serial iterative reference
// and the OpenMP closed-form evaluation
double weyl_sum_abs_serial(double alpha, double beta, double x0, double y0,
                           std::int64_t n);
double weyl_sum_abs_parallel(double alpha, double beta, double x0, double y0,
                             std::int64_t n, int jobs);

inline constexpr double kGoldenRotation = 0.61803398874989484820; // (sqrt(5)-1)/2

} // namespace devlab

#endif
