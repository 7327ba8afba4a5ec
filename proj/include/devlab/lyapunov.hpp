#ifndef DEVLAB_LYAPUNOV_HPP
#define DEVLAB_LYAPUNOV_HPP

#include <cstdint>
#include <vector>

#include "devlab/rauzy_veech.hpp"

namespace devlab {

/**
 * Streaming Oseledec estimation state: a d x k orthonormal frame pushed
 * through the transposed cocycle matrices, with log growth harvested at
 * each re-orthonormalization (modified Gram-Schmidt). Exponents are per
 * unit of accumulated log_scale, so the top one is 1.
 */
class CocycleAccumulator {
public:
    CocycleAccumulator(int d, int k, int cadence = 10);

    void push(const RenormStep& step);
    void flush();                 // orthonormalize now, harvest log norms
    void reset_accumulation();    // zero the accumulators, keep the frame

    int dim() const { return d_; }
    int frame_size() const { return k_; }
    std::uint64_t steps() const { return steps_; }
    double teich_time() const { return teich_time_; }
    const std::vector<double>& log_norms() const { return log_norms_; }

    // log_norms / teich_time
    std::vector<double> exponents() const;

private:
    int d_, k_, cadence_;
    std::vector<double> frame_;     // column-major d x k
    std::vector<double> log_norms_;
    double teich_time_ = 0.0;
    std::uint64_t steps_ = 0;
    int since_flush_ = 0;
    double batch_teich_ = 0.0;

    // extra flushes beyond the cadence keep the frame conditioned through
    // heavy-tailed steps
    static constexpr double kMaxBatchTeich = 4.0;
    static constexpr double kMaxEntry = 1e120;
};

struct SpectrumReport {
    std::vector<double> exponents;  // sorted descending, per unit teich time
    std::vector<double> stderrs;    // batch-means standard errors
    double teich_time = 0.0;
    std::uint64_t steps = 0;
    int d = 0, g = 0, sigma = 0;
    // per-batch diagnostics (raw frame-column order, empty after merging)
    std::vector<std::uint64_t> batch_steps;
    std::vector<std::vector<double>> batch_exponents;
};

struct EstimateOptions {
    std::uint64_t warmup = 100; // Zorich steps discarded before accumulating
    int batches = 20;
    int cadence = 10;
    int max_retries = 5;        // fresh samples on KeaneViolation/NonRecurrent
};

// Samples a random exchange over `perm` (Dirichlet lengths from `seed`),
// iterates zorich_step for n_steps and returns the leading k exponents.
SpectrumReport estimate_spectrum(const LabeledPermutation& perm, std::uint64_t seed,
                                 std::uint64_t n_steps, int k,
                                 const EstimateOptions& opts = {});

// inverse-variance pooling of independent runs, order-independent
SpectrumReport merge_reports(const std::vector<SpectrumReport>& reports);

struct SpectrumStructure {
    double symmetry_defect;   // max_i |nu_i + nu_{d+1-i}|
    int near_zero_count;      // #{ |nu_i| < 3 stderr_i }
    int expected_zero_count;  // sigma - 1
    double top_gap;           // |nu_1 - 1|
};

// requires a full spectrum (k = d)
SpectrumStructure full_spectrum_structure(const SpectrumReport& report);

// strictly positive exponents divided by the top one: (1, nu_2/nu_1, ...)
std::vector<double> predict_deviation_exponents(const SpectrumReport& report);

// 1 - nu_k/nu_1 for each strictly positive exponent (raw, unclamped)
std::vector<double> sobolev_order_report(const SpectrumReport& report);

} // namespace devlab

#endif
