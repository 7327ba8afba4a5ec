#include "devlab/homogeneous.hpp"

#include <cmath>

#include "devlab/error.hpp"

namespace devlab {

namespace {

std::int64_t checked_muladd(std::int64_t a, std::int64_t b, std::int64_t c) {
    std::int64_t t, out;
    if (__builtin_mul_overflow(a, b, &t) || __builtin_add_overflow(t, c, &out))
        throw Error(ErrorCode::Overflow, "convergent recurrence overflow");
    return out;
}

} // namespace

ContinuedFraction continued_fraction(double alpha, int n) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0,1)");
    if (n < 1 || n > 40)
        throw Error(ErrorCode::InvalidArgument,
                    "expansion depth must be in [1,40] (double-precision limit)");
    ContinuedFraction cf;
    cf.alpha = alpha;
    double x = alpha;
    std::int64_t p_prev = 1, q_prev = 0; // p_{-1}, q_{-1}
    std::int64_t p_cur = 0, q_cur = 1;   // p_0, q_0
    for (int i = 1; i <= n; ++i) {
        if (x < 1e-14)
            throw Error(ErrorCode::RationalAlpha,
                        "tail remainder below 1e-14 after a_" + std::to_string(i - 1));
        double inv = 1.0 / x;
        auto a = static_cast<std::int64_t>(std::floor(inv));
        x = inv - static_cast<double>(a);
        std::int64_t p = checked_muladd(a, p_cur, p_prev);
        std::int64_t q = checked_muladd(a, q_cur, q_prev);
        cf.quotients.push_back(a);
        cf.p.push_back(p);
        cf.q.push_back(q);
        p_prev = p_cur; q_prev = q_cur;
        p_cur = p; q_cur = q;
    }
    return cf;
}

DenjoyKoksmaReport denjoy_koksma_check(double alpha, const Observable& f,
                                       double x0, int n_levels) {
    ensure_mean_zero(f);
    ContinuedFraction cf = continued_fraction(alpha, n_levels);
    DenjoyKoksmaReport report;
    report.all_pass = true;
    report.worst_excess = -f.variation();
    for (std::size_t i = 0; i < cf.q.size(); ++i) {
        std::int64_t q = cf.q[i];
        double sum = 0.0, comp = 0.0;
        for (std::int64_t k = 0; k < q; ++k) {
            double x = std::fmod(x0 + static_cast<double>(k) * alpha, 1.0);
            double y = f(x) - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        DenjoyKoksmaLevel level;
        level.q = q;
        level.abs_sum = std::abs(sum);
        level.bound = f.variation() + 1e-8;
        level.pass = level.abs_sum <= level.bound;
        report.worst_excess = std::max(report.worst_excess,
                                       level.abs_sum - f.variation());
        report.all_pass = report.all_pass && level.pass;
        report.levels.push_back(level);
    }
    return report;
}

namespace {

struct DoubleDouble {
    double hi, lo;
};

DoubleDouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

DoubleDouble two_prod(double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    return {p, e};
}

DoubleDouble dd_add(DoubleDouble x, DoubleDouble y) {
    DoubleDouble s = two_sum(x.hi, y.hi);
    double lo = s.lo + x.lo + y.lo;
    DoubleDouble r = two_sum(s.hi, lo);
    return r;
}

} // namespace

double quadratic_phase(double alpha, double beta, double x0, double y0,
                       std::int64_t k) {
    // k(k-1)/2 must stay exactly representable in a double
    if (k < 0 || k > (std::int64_t{1} << 26) * 100)
        throw Error(ErrorCode::InvalidArgument, "phase index out of range");
    double kd = static_cast<double>(k);
    double md = static_cast<double>(k * (k - 1) / 2);
    DoubleDouble acc = two_prod(kd, beta);
    acc = dd_add(acc, two_prod(kd, x0));
    acc = dd_add(acc, two_prod(md, alpha));
    acc = dd_add(acc, DoubleDouble{y0, 0.0});
    double r = std::fmod(acc.hi, 1.0) + acc.lo;
    r -= std::floor(r);
    if (r >= 1.0) r -= 1.0;
    if (r < 0.0) r = 0.0;
    return r;
}

DeviationSeries heisenberg_sum(double alpha, double beta, double x0, double y0,
                               std::int64_t t_max, double schedule_ratio) {
    auto times = make_schedule(t_max, schedule_ratio);
    DeviationSeries out;
    out.kind = SeriesKind::observable;
    out.times = times;
    out.values.reserve(times.size());
    const double two_pi = 2.0 * std::acos(-1.0);
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0; // kahan sums, real/imag
    std::int64_t k = 0;
    for (std::int64_t t : times) {
        for (; k < t; ++k) {
            double ph = two_pi * quadratic_phase(alpha, beta, x0, y0, k);
            double vr = std::cos(ph), vi = std::sin(ph);
            double y = vr - cr;
            double s = sr + y;
            cr = (s - sr) - y;
            sr = s;
            y = vi - ci;
            s = si + y;
            ci = (s - si) - y;
            si = s;
        }
        out.values.push_back(std::hypot(sr, si));
    }
    return out;
}

double weyl_sum_abs_serial(double alpha, double beta, double x0, double y0,
                           std::int64_t n) {
    // iterative skew-product reference with compensated x and y accumulators
    const double two_pi = 2.0 * std::acos(-1.0);
    double x = x0, xc = 0.0;
    double yv = y0, yc = 0.0;
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    for (std::int64_t k = 0; k < n; ++k) {
        double ph = two_pi * yv;
        double vr = std::cos(ph), vi = std::sin(ph);
        double t = sr + (vr - cr);
        cr = (t - sr) - (vr - cr);
        sr = t;
        t = si + (vi - ci);
        ci = (t - si) - (vi - ci);
        si = t;
        // y += x + beta (kahan), then wrap; subtracting 1 is exact
        double inc = x + beta - yc;
        double ny = yv + inc;
        yc = (ny - yv) - inc;
        yv = ny;
        while (yv >= 1.0) yv -= 1.0;
        double xinc = alpha - xc;
        double nx = x + xinc;
        xc = (nx - x) - xinc;
        x = nx;
        if (x >= 1.0) x -= 1.0;
    }
    return std::hypot(sr, si);
}

double weyl_sum_abs_parallel(double alpha, double beta, double x0, double y0,
                             std::int64_t n, int jobs) {
    const double two_pi = 2.0 * std::acos(-1.0);
    double sr = 0.0, si = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : sr, si) num_threads(jobs) schedule(static)
#endif
    for (std::int64_t k = 0; k < n; ++k) {
        double ph = two_pi * quadratic_phase(alpha, beta, x0, y0, k);
        sr += std::cos(ph);
        si += std::sin(ph);
    }
    (void)jobs;
    return std::hypot(sr, si);
}

} // namespace devlab
