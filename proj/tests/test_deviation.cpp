#include <doctest.h>

#include <cmath>

#include "devlab/deviation.hpp"
#include "devlab/error.hpp"
#include "devlab/rng.hpp"

using namespace devlab;

namespace {

DeviationSeries synthetic(std::int64_t t_max, double (*f)(double)) {
    DeviationSeries s;
    s.kind = SeriesKind::observable;
    s.times = make_schedule(t_max);
    for (std::int64_t t : s.times) s.values.push_back(f(static_cast<double>(t)));
    return s;
}

} // namespace

TEST_CASE("schedule is geometric and deduplicated") {
    auto s = make_schedule(100);
    REQUIRE(!s.empty());
    CHECK(s.front() == 1);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
    CHECK(s.back() <= 100);
    CHECK_THROWS_AS(make_schedule(10, 1.0), Error);
}

TEST_CASE("fit recovers an exact power law") {
    auto s = synthetic(1000000, [](double t) { return std::pow(t, 0.5); });
    auto fit = fit_exponent(s, 100.0);
    CHECK(fit.slope == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fit of a logarithmic series stays below 0.15") {
    // frozen value 0.115468 from the same schedule/window policy
    auto s = synthetic(1000000, [](double t) { return t > 1.0 ? std::log(t) : 0.0; });
    auto fit = fit_exponent(s, 100.0);
    CHECK(fit.slope < 0.15);
    CHECK(fit.slope == doctest::Approx(0.115468).epsilon(1e-3));
}

TEST_CASE("fit tolerates additive noise") {
    DeviationSeries s;
    s.kind = SeriesKind::observable;
    s.times = make_schedule(1000000);
    Rng rng(20240909);
    for (std::int64_t t : s.times)
        s.values.push_back(3.0 * std::pow(static_cast<double>(t), 0.33) + rng.uniform01());
    auto fit = fit_exponent(s, 100.0);
    CHECK(std::abs(fit.slope - 0.33) <= 0.02);
}

TEST_CASE("bounded series fit tends to zero slope") {
    auto slope_at = [](std::int64_t t_max) {
        DeviationSeries s;
        s.kind = SeriesKind::observable;
        s.times = make_schedule(t_max);
        for (std::int64_t t : s.times)
            s.values.push_back(2.0 + std::sin(std::log(static_cast<double>(t))));
        return fit_exponent(s, std::cbrt(static_cast<double>(t_max))).slope;
    };
    double s6 = slope_at(1000000);
    CHECK(std::abs(s6) < 0.05);
    CHECK(std::abs(slope_at(10000)) >= std::abs(s6) - 1e-12);
}

TEST_CASE("fitted slope is scale invariant") {
    auto s = synthetic(100000, [](double t) { return std::pow(t, 0.41) * 0.2; });
    auto scaled = s;
    for (double& v : scaled.values) v *= 73.0;
    double a = fit_exponent(s, 40.0).slope;
    double b = fit_exponent(scaled, 40.0).slope;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("degenerate and short series are refused") {
    auto zero = synthetic(100000, [](double) { return 1e-13; });
    CHECK_THROWS_AS(fit_exponent(zero, 10.0), Error);
    try {
        fit_exponent(zero, 10.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateSeries);
    }
    auto ok = synthetic(100000, [](double t) { return t; });
    CHECK_THROWS_AS(fit_exponent(ok, 99000.0), Error); // < 8 checkpoints left
}

TEST_CASE("observables verify their means") {
    auto trig = Observable::trigonometric(1);
    CHECK(trig.mean() == 0.0);
    CHECK(std::abs(trig.quadrature_mean()) < 1e-10);
    CHECK(trig.variation() == doctest::Approx(4.0));

    auto pl = Observable::piecewise_linear();
    CHECK(std::abs(pl.quadrature_mean()) < 1e-10);

    auto ind = Observable::indicator(0.0, 0.5);
    CHECK(std::abs(ind.quadrature_mean()) < 1e-10);
    CHECK(ind.variation() == doctest::Approx(2.0));
    CHECK(ind(0.25) == doctest::Approx(0.5));
    CHECK(ind(0.75) == doctest::Approx(-0.5));

    CHECK_NOTHROW(ensure_mean_zero(trig));
    CHECK_THROWS_AS(ensure_mean_zero(Observable::constant(1.0)), Error);
    try {
        ensure_mean_zero(Observable::constant(2.0));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonZeroMean);
    }
}

TEST_CASE("homology deviation starts at zero and stays nonnegative") {
    Rng rng(11);
    auto perm = LabeledPermutation::parse("ABCD/DCBA");
    auto iet = new_iet(perm, rng.simplex(4));
    auto series = homology_deviation(iet, 0.37, std::vector<std::int64_t>{0, 1, 10, 100});
    REQUIRE(series.times.size() == 4);
    CHECK(series.values[0] == 0.0);
    for (double v : series.values) CHECK(v >= 0.0);
    CHECK(series.kind == SeriesKind::homology);
}

TEST_CASE("indicator sums equal the homology deviation coordinate") {
    Rng rng(22);
    auto perm = LabeledPermutation::parse("ABCD/DCBA");
    auto iet = new_iet(perm, rng.simplex(4));
    double x0 = rng.uniform01();
    const std::int64_t n = 10000;

    auto itinerary = iet.itinerary(x0, n);
    for (int sym = 0; sym < 4; ++sym) {
        int pos = iet.permutation().position_in_top(sym);
        double a = iet.top_prefix()[static_cast<std::size_t>(pos)];
        double b = iet.top_prefix()[static_cast<std::size_t>(pos + 1)];
        auto f = Observable::indicator(a, b);
        auto series = observable_sum(iet, f, x0, std::vector<std::int64_t>{n});
        double expected = static_cast<double>(itinerary.counts[static_cast<std::size_t>(sym)]) -
                          static_cast<double>(n) * (b - a);
        CHECK(series.values[0] == doctest::Approx(std::abs(expected)).epsilon(1e-9));
    }
}

TEST_CASE("nonzero-mean sums grow linearly at the mean rate") {
    Rng rng(33);
    auto perm = LabeledPermutation::parse("ABCD/DCBA");
    auto iet = new_iet(perm, rng.simplex(4));
    auto f = Observable::constant(0.75);
    const std::int64_t n = 1000000;
    auto series = observable_sum(iet, f, rng.uniform01(), std::vector<std::int64_t>{n});
    CHECK(series.values[0] / static_cast<double>(n) == doctest::Approx(0.75).epsilon(1e-2));

    // slope of the raw sums of f == 1 is exactly 1
    auto ones = observable_sum(iet, Observable::constant(1.0), 0.1, 100000);
    auto fit = fit_exponent(ones, 40.0);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("itinerary counts always sum to n") {
    Rng rng(44);
    auto perm = LabeledPermutation::parse("ABCDE/EDCBA");
    for (int trial = 0; trial < 5; ++trial) {
        auto iet = new_iet(perm, rng.simplex(5));
        std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_u64() % 5000);
        auto it = iet.itinerary(rng.uniform01(), n);
        std::int64_t total = 0;
        for (auto c : it.counts) total += c;
        CHECK(total == n);
    }
}

TEST_CASE("compare_spectrum verdicts") {
    std::vector<DeviationFit> fits;
    for (double s : {0.32, 0.335, 0.34, 0.31, 0.36})
        fits.push_back(DeviationFit{s, 0.0, 0.99, 0, 10});

    auto cmp = compare_spectrum(fits, {1.0, 0.3334}, 0.05);
    CHECK(cmp.median_slope == doctest::Approx(0.335));
    CHECK(cmp.pass);
    CHECK(!cmp.vacuous);

    auto vac = compare_spectrum(fits, {1.0}, 0.05);
    CHECK(vac.vacuous);
    CHECK(vac.pass);

    CHECK_THROWS_AS(compare_spectrum(fits, {}, 0.05), Error);
    try {
        compare_spectrum(fits, {}, 0.05);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidConfig);
    }

    auto fail = compare_spectrum(fits, {1.0, 0.6}, 0.05);
    CHECK(!fail.pass);
}
