#ifndef DEVLAB_DEVIATION_HPP
#define DEVLAB_DEVIATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "devlab/interval_exchange.hpp"

namespace devlab {

enum class SeriesKind { homology, observable };

/**
 * Checkpointed deviation magnitudes along one orbit: at time T_j either the
 * norm of counts - T * asymptotic_cycle, or |Birkhoff sum| of an observable.
 */
struct DeviationSeries {
    SeriesKind kind;
    std::vector<std::int64_t> times;  // strictly increasing
    std::vector<double> values;       // >= 0
};

struct DeviationFit {
    double slope;
    double intercept;
    double r2;
    int window_begin; // first checkpoint index used
    int window_end;   // one past the last
};

// T_j = floor(ratio^j), deduplicated, 1 <= T_j <= t_max
std::vector<std::int64_t> make_schedule(std::int64_t t_max, double ratio = 1.25);

/**
 * Test functions on [0,1). Mean-zero kinds verify their mean by piecewise
 * Gauss-Legendre quadrature at construction (|mean| < 1e-10).
 */
class Observable {
public:
    enum class Kind { trigonometric, piecewise_linear, indicator_minus_mean, constant };

    static Observable trigonometric(int m);            // cos(2 pi m x)
    static Observable piecewise_linear();              // x - 1/2
    static Observable indicator(double a, double b);   // 1_[a,b) - (b - a)
    static Observable constant(double c);

    double operator()(double x) const;
    Kind kind() const { return kind_; }
    double mean() const { return mean_; }
    double variation() const; // total variation over [0,1)
    double quadrature_mean() const;

private:
    Observable(Kind kind, double p0, double p1, double mean);
    Kind kind_;
    double p0_, p1_;
    double mean_;
};

// throws NonZeroMean unless f is suitable for a deviation fit
void ensure_mean_zero(const Observable& f);

DeviationSeries homology_deviation(const IntervalExchange& iet, double x0,
                                   std::int64_t t_max, double schedule_ratio = 1.25);
DeviationSeries homology_deviation(const IntervalExchange& iet, double x0,
                                   const std::vector<std::int64_t>& times);

DeviationSeries observable_sum(const IntervalExchange& iet, const Observable& f,
                               double x0, std::int64_t t_max,
                               double schedule_ratio = 1.25);
DeviationSeries observable_sum(const IntervalExchange& iet, const Observable& f,
                               double x0, const std::vector<std::int64_t>& times);

// least squares on (log T, log running-max value) for T >= t_min;
// the running max realizes the limsup
DeviationFit fit_exponent(const DeviationSeries& series, double t_min);

struct SpectrumComparison {
    double median_slope;
    double dispersion;     // median absolute deviation of the trial slopes
    double predicted;      // sub-leading predicted exponent (NaN if none)
    double gap;            // |median - predicted| (NaN if none to match)
    bool vacuous;          // no positive sub-leading exponent to match
    bool pass;
};

// fits vs. predict_deviation_exponents output; predicted must be non-empty
SpectrumComparison compare_spectrum(const std::vector<DeviationFit>& fits,
                                    const std::vector<double>& predicted,
                                    double tolerance);

} // namespace devlab

#endif
