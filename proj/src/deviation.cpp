#include "devlab/deviation.hpp"

#include <algorithm>
#include <cmath>

#include "devlab/error.hpp"

namespace devlab {

std::vector<std::int64_t> make_schedule(std::int64_t t_max, double ratio) {
    if (t_max < 1) throw Error(ErrorCode::InvalidArgument, "t_max must be >= 1");
    if (!(ratio > 1.0))
        throw Error(ErrorCode::InvalidArgument, "schedule ratio must exceed 1");
    std::vector<std::int64_t> out;
    double t = 1.0;
    for (;;) {
        auto v = static_cast<std::int64_t>(std::floor(t));
        if (v > t_max) break;
        if (out.empty() || v > out.back()) out.push_back(v);
        t *= ratio;
    }
    return out;
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric)
constexpr double kGlNode[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

} // namespace

Observable::Observable(Kind kind, double p0, double p1, double mean)
    : kind_(kind), p0_(p0), p1_(p1), mean_(mean) {}

Observable Observable::trigonometric(int m) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "trigonometric order must be >= 1");
    Observable f(Kind::trigonometric, static_cast<double>(m), 0.0, 0.0);
    if (std::abs(f.quadrature_mean()) >= 1e-10)
        throw Error(ErrorCode::InvalidArgument, "observable failed the mean-zero check");
    return f;
}

Observable Observable::piecewise_linear() {
    Observable f(Kind::piecewise_linear, 0.0, 0.0, 0.0);
    if (std::abs(f.quadrature_mean()) >= 1e-10)
        throw Error(ErrorCode::InvalidArgument, "observable failed the mean-zero check");
    return f;
}

Observable Observable::indicator(double a, double b) {
    if (!(0.0 <= a && a < b && b <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "indicator needs 0 <= a < b <= 1");
    Observable f(Kind::indicator_minus_mean, a, b, 0.0);
    if (std::abs(f.quadrature_mean()) >= 1e-10)
        throw Error(ErrorCode::InvalidArgument, "observable failed the mean-zero check");
    return f;
}

Observable Observable::constant(double c) {
    return Observable(Kind::constant, c, 0.0, c);
}

double Observable::operator()(double x) const {
    switch (kind_) {
        case Kind::trigonometric:
            return std::cos(2.0 * std::acos(-1.0) * p0_ * x);
        case Kind::piecewise_linear:
            return x - 0.5;
        case Kind::indicator_minus_mean:
            return ((p0_ <= x && x < p1_) ? 1.0 : 0.0) - (p1_ - p0_);
        case Kind::constant:
            return p0_;
    }
    return 0.0;
}

double Observable::variation() const {
    // total variation over the circle
    switch (kind_) {
        case Kind::trigonometric: return 4.0 * p0_;
        case Kind::piecewise_linear: return 2.0; // slope 1 plus the wrap jump
        case Kind::indicator_minus_mean: return 2.0;
        case Kind::constant: return 0.0;
    }
    return 0.0;
}

double Observable::quadrature_mean() const {
    // piecewise Gauss-Legendre on segments aligned to the breakpoints
    std::vector<double> cuts{0.0, 1.0};
    if (kind_ == Kind::trigonometric) {
        int m = static_cast<int>(p0_);
        cuts.clear();
        for (int i = 0; i <= 4 * m; ++i) cuts.push_back(static_cast<double>(i) / (4.0 * m));
    } else if (kind_ == Kind::indicator_minus_mean) {
        cuts = {0.0, p0_, p1_, 1.0};
    }
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        double a = cuts[s], b = cuts[s + 1];
        if (!(b > a)) continue;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (int i = 0; i < 8; ++i) {
            acc += kGlWeight[i] * ((*this)(mid + half * kGlNode[i]) +
                                   (*this)(mid - half * kGlNode[i]));
        }
        total += acc * half;
    }
    return total;
}

void ensure_mean_zero(const Observable& f) {
    if (f.mean() != 0.0)
        throw Error(ErrorCode::NonZeroMean,
                    "deviation fit requested for an observable with nonzero mean");
}

namespace {

std::vector<std::int64_t> checked_schedule(std::int64_t t_max, double ratio) {
    auto s = make_schedule(t_max, ratio);
    if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty checkpoint schedule");
    return s;
}

} // namespace

DeviationSeries homology_deviation(const IntervalExchange& iet, double x0,
                                   const std::vector<std::int64_t>& times) {
    DeviationSeries out;
    out.kind = SeriesKind::homology;
    out.times = times;
    out.values.reserve(times.size());
    const auto& lam = iet.lengths();
    int d = iet.size();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(d), 0);
    double x = x0;
    std::int64_t n = 0;
    for (std::int64_t t : times) {
        if (t < n) throw Error(ErrorCode::InvalidArgument, "times must be increasing");
        for (; n < t; ++n) {
            auto [y, s] = iet.apply(x);
            ++counts[static_cast<std::size_t>(s)];
            x = y;
        }
        double acc = 0.0;
        for (int a = 0; a < d; ++a) {
            double dev = static_cast<double>(counts[static_cast<std::size_t>(a)]) -
                         static_cast<double>(n) * lam[static_cast<std::size_t>(a)];
            acc += dev * dev;
        }
        out.values.push_back(std::sqrt(acc));
    }
    return out;
}

DeviationSeries homology_deviation(const IntervalExchange& iet, double x0,
                                   std::int64_t t_max, double schedule_ratio) {
    return homology_deviation(iet, x0, checked_schedule(t_max, schedule_ratio));
}

DeviationSeries observable_sum(const IntervalExchange& iet, const Observable& f,
                               double x0, const std::vector<std::int64_t>& times) {
    DeviationSeries out;
    out.kind = SeriesKind::observable;
    out.times = times;
    out.values.reserve(times.size());
    double sum = 0.0, comp = 0.0;
    double x = x0;
    std::int64_t n = 0;
    for (std::int64_t t : times) {
        if (t < n) throw Error(ErrorCode::InvalidArgument, "times must be increasing");
        for (; n < t; ++n) {
            double y = f(x) - comp;
            double s = sum + y;
            comp = (s - sum) - y;
            sum = s;
            x = iet.apply(x).first;
        }
        out.values.push_back(std::abs(sum));
    }
    return out;
}

DeviationSeries observable_sum(const IntervalExchange& iet, const Observable& f,
                               double x0, std::int64_t t_max, double schedule_ratio) {
    return observable_sum(iet, f, x0, checked_schedule(t_max, schedule_ratio));
}

DeviationFit fit_exponent(const DeviationSeries& series, double t_min) {
    bool any_significant = false;
    for (double v : series.values)
        if (v >= 1e-12) { any_significant = true; break; }
    if (!any_significant)
        throw Error(ErrorCode::DegenerateSeries, "all values below 1e-12");

    double running = 0.0;
    std::vector<double> xs, ys;
    int begin = -1, end = -1;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        running = std::max(running, series.values[i]);
        if (static_cast<double>(series.times[i]) < t_min || running <= 0.0) continue;
        if (begin < 0) begin = static_cast<int>(i);
        end = static_cast<int>(i) + 1;
        xs.push_back(std::log(static_cast<double>(series.times[i])));
        ys.push_back(std::log(running));
    }
    if (xs.size() < 8)
        throw Error(ErrorCode::InvalidArgument,
                    "need at least 8 checkpoints beyond t_min, have " +
                        std::to_string(xs.size()));
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    DeviationFit fit{};
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = syy - fit.slope * sxy;
    fit.r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    fit.window_begin = begin;
    fit.window_end = end;
    return fit;
}

SpectrumComparison compare_spectrum(const std::vector<DeviationFit>& fits,
                                    const std::vector<double>& predicted,
                                    double tolerance) {
    if (predicted.empty())
        throw Error(ErrorCode::InvalidConfig,
                    "predicted exponent list is empty; nothing to compare against");
    if (fits.empty())
        throw Error(ErrorCode::InvalidConfig, "no fitted slopes supplied");
    std::vector<double> slopes;
    slopes.reserve(fits.size());
    for (const auto& f : fits) slopes.push_back(f.slope);
    std::sort(slopes.begin(), slopes.end());
    auto median_of = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        std::size_t n = v.size();
        return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    SpectrumComparison out{};
    out.median_slope = median_of(slopes);
    std::vector<double> dev;
    dev.reserve(slopes.size());
    for (double s : slopes) dev.push_back(std::abs(s - out.median_slope));
    out.dispersion = median_of(dev);
    if (predicted.size() < 2) {
        out.vacuous = true;
        out.predicted = std::nan("");
        out.gap = std::nan("");
        out.pass = true;
    } else {
        out.vacuous = false;
        out.predicted = predicted[1];
        out.gap = std::abs(out.median_slope - out.predicted);
        out.pass = out.gap < tolerance;
    }
    return out;
}

} // namespace devlab
