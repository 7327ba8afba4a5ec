#include <doctest.h>

#include <cmath>
#include <vector>

#include "devlab/error.hpp"
#include "devlab/lyapunov.hpp"
#include "devlab/rng.hpp"

#ifdef DEVLAB_HAVE_MPFR
#include <boost/multiprecision/mpfr.hpp>
#endif

using namespace devlab;

TEST_CASE("torus cocycle spectrum is (1, -1)") {
    auto perm = LabeledPermutation::parse("AB/BA");
    auto report = estimate_spectrum(perm, 12345, 20000, 2);
    REQUIRE(report.exponents.size() == 2);
    CHECK(std::abs(report.exponents[0] - 1.0) < 3.0 * report.stderrs[0] + 0.02);
    CHECK(std::abs(report.exponents[0] + report.exponents[1]) < 0.02);
    CHECK(report.g == 1);
    CHECK(report.sigma == 1);
}

TEST_CASE("genus-2 second exponent is strictly positive") {
    auto perm = LabeledPermutation::parse("ABCD/DCBA");
    auto report = estimate_spectrum(perm, 777, 50000, 2);
    REQUIRE(report.exponents.size() == 2);
    CHECK(report.exponents[1] > 5.0 * report.stderrs[1]);
    CHECK(report.exponents[1] > 0.0);
    // theory: 1/3 for this stratum
    CHECK(report.exponents[1] == doctest::Approx(1.0 / 3.0).epsilon(0.15));
}

TEST_CASE("deflation monotonicity: top exponent agrees between k=1 and k=d") {
    auto perm = LabeledPermutation::parse("ABCD/DCBA");
    auto top_only = estimate_spectrum(perm, 31, 30000, 1);
    auto full = estimate_spectrum(perm, 31, 30000, 4);
    double tol = 2.0 * std::hypot(top_only.stderrs[0], full.stderrs[0]);
    CHECK(std::abs(top_only.exponents[0] - full.exponents[0]) < tol + 1e-6);
}

TEST_CASE("seed robustness") {
    auto perm = LabeledPermutation::parse("ABCD/DCBA");
    auto a = estimate_spectrum(perm, 1001, 30000, 2);
    auto b = estimate_spectrum(perm, 2002, 30000, 2);
    for (int i = 0; i < 2; ++i) {
        double tol = 3.0 * std::hypot(a.stderrs[static_cast<std::size_t>(i)],
                                      b.stderrs[static_cast<std::size_t>(i)]);
        CHECK(std::abs(a.exponents[static_cast<std::size_t>(i)] -
                       b.exponents[static_cast<std::size_t>(i)]) < tol);
    }
}

TEST_CASE("full spectrum is symmetric and normalized") {
    auto perm = LabeledPermutation::parse("ABCD/DCBA");
    auto report = estimate_spectrum(perm, 99, 60000, 4);
    REQUIRE(report.exponents.size() == 4);
    CHECK(std::abs(report.exponents[0] - 1.0) < 3.0 * report.stderrs[0] + 0.01);
    for (int i = 0; i < 4; ++i) {
        double tol = 3.0 * std::hypot(report.stderrs[static_cast<std::size_t>(i)],
                                      report.stderrs[static_cast<std::size_t>(3 - i)]);
        CHECK(std::abs(report.exponents[static_cast<std::size_t>(i)] +
                       report.exponents[static_cast<std::size_t>(3 - i)]) < tol + 0.01);
    }
}

TEST_CASE("structure verdict on the torus") {
    auto perm = LabeledPermutation::parse("AB/BA");
    auto report = estimate_spectrum(perm, 5150, 20000, 2);
    auto st = full_spectrum_structure(report);
    CHECK(st.symmetry_defect < 0.02);
    CHECK(st.near_zero_count == 0);
    CHECK(st.expected_zero_count == 0);
    CHECK(st.top_gap < 0.02);
}

TEST_CASE("prediction and sobolev lists") {
    SpectrumReport torus;
    torus.exponents = {1.0, -1.0};
    torus.stderrs = {0.001, 0.001};
    torus.d = 2; torus.g = 1; torus.sigma = 1;
    auto p = predict_deviation_exponents(torus);
    REQUIRE(p.size() == 1);
    CHECK(p[0] == doctest::Approx(1.0));
    auto s = sobolev_order_report(torus);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == doctest::Approx(0.0));

    SpectrumReport h2;
    h2.exponents = {1.0, 0.3334, -0.3334, -1.0};
    h2.stderrs = {0.001, 0.001, 0.001, 0.001};
    h2.d = 4; h2.g = 2; h2.sigma = 1;
    p = predict_deviation_exponents(h2);
    REQUIRE(p.size() == 2);
    CHECK(p[1] == doctest::Approx(0.3334));
    s = sobolev_order_report(h2);
    REQUIRE(s.size() == 2);
    CHECK(s[1] == doctest::Approx(1.0 - 0.3334));

    // near-zero exponents are excluded from the positive list
    SpectrumReport h11;
    h11.exponents = {1.0, 0.5, 0.0005, -0.5, -1.0};
    h11.stderrs = {0.001, 0.001, 0.001, 0.001, 0.001};
    h11.d = 5; h11.g = 2; h11.sigma = 2;
    p = predict_deviation_exponents(h11);
    REQUIRE(p.size() == 2);
    CHECK(p[1] == doctest::Approx(0.5));
}

TEST_CASE("merge pools by inverse variance") {
    SpectrumReport a, b;
    a.exponents = {1.1};  a.stderrs = {0.1};  a.d = 2; a.g = 1; a.sigma = 1;
    b.exponents = {0.9};  b.stderrs = {0.1};  b.d = 2; b.g = 1; b.sigma = 1;
    auto merged = merge_reports({a, b});
    CHECK(merged.exponents[0] == doctest::Approx(1.0));
    CHECK(merged.stderrs[0] == doctest::Approx(0.1 / std::sqrt(2.0)));
}

TEST_CASE("estimate rejects bad arguments") {
    auto perm = LabeledPermutation::parse("AB/BA");
    CHECK_THROWS_AS(estimate_spectrum(perm, 1, 100, 2), Error);   // too few steps
    CHECK_THROWS_AS(estimate_spectrum(perm, 1, 2000, 3), Error);  // k > d
    SpectrumReport partial;
    partial.exponents = {1.0};
    partial.stderrs = {0.01};
    partial.d = 2;
    CHECK_THROWS_AS(full_spectrum_structure(partial), Error);
}

#ifdef DEVLAB_HAVE_MPFR

namespace {

using BigFloat = boost::multiprecision::mpfr_float;

// cyclic Jacobi eigenvalues of a symmetric positive-definite matrix; the
// relative accuracy of small eigenvalues is what matters here
std::vector<BigFloat> jacobi_eigenvalues(std::vector<BigFloat> a, int n) {
    auto at = [&](int i, int j) -> BigFloat& {
        return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n)
                 + static_cast<std::size_t>(j)];
    };
    const BigFloat tiny = boost::multiprecision::pow(BigFloat(2), -BigFloat(200));
    for (int sweep = 0; sweep < 200; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                BigFloat app = at(p, p), aqq = at(q, q), apq = at(p, q);
                if (abs(apq) <= tiny * sqrt(abs(app) * abs(aqq))) continue;
                rotated = true;
                BigFloat theta = (aqq - app) / (2 * apq);
                BigFloat t = 1 / (abs(theta) + sqrt(theta * theta + 1));
                if (theta < 0) t = -t;
                BigFloat c = 1 / sqrt(t * t + 1);
                BigFloat s = t * c;
                for (int i = 0; i < n; ++i) {
                    BigFloat aip = at(i, p), aiq = at(i, q);
                    at(i, p) = c * aip - s * aiq;
                    at(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    BigFloat api = at(p, i), aqi = at(q, i);
                    at(p, i) = c * api - s * aqi;
                    at(q, i) = s * api + c * aqi;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<BigFloat> eig;
    for (int i = 0; i < n; ++i) eig.push_back(at(i, i));
    return eig;
}

} // namespace

TEST_CASE("streaming exponents match an extended-precision product SVD") {
    // same matrix sequence through both paths: the streaming accumulator
    // and log-singular-values of the fully accumulated product
    for (const char* perm_text : {"AB/BA", "ABCD/DCBA"}) {
        auto perm = LabeledPermutation::parse(perm_text);
        int d = perm.size();
        Rng rng(20250809);
        auto iet = new_iet(perm, rng.simplex(d));

        std::vector<RenormStep> steps;
        double teich = 0.0;
        for (int i = 0; i < 1000; ++i) {
            auto [next, step] = zorich_step(iet);
            teich += step.log_scale;
            steps.push_back(std::move(step));
            iet = std::move(next);
        }

        CocycleAccumulator acc(d, d);
        for (const auto& s : steps) acc.push(s);
        acc.flush();
        auto streaming = acc.exponents();
        std::sort(streaming.begin(), streaming.end(), std::greater<double>());

        // exact integer product in high precision; the gram matrix spans
        // 2 (nu_1 - nu_d) / ln 2 ~ 5.8 bits per unit of teich time
        int bits = static_cast<int>(teich * 6.5) + 768;
        BigFloat::default_precision(static_cast<unsigned>(bits * 0.302) + 16);
        std::vector<BigFloat> prod(static_cast<std::size_t>(d) * static_cast<std::size_t>(d),
                                   BigFloat(0));
        for (int i = 0; i < d; ++i)
            prod[static_cast<std::size_t>(i) * static_cast<std::size_t>(d)
                 + static_cast<std::size_t>(i)] = 1;
        for (const auto& s : steps) {
            std::vector<BigFloat> next(static_cast<std::size_t>(d) * static_cast<std::size_t>(d),
                                       BigFloat(0));
            for (int i = 0; i < d; ++i)
                for (int l = 0; l < d; ++l) {
                    const BigFloat& a =
                        prod[static_cast<std::size_t>(i) * static_cast<std::size_t>(d)
                             + static_cast<std::size_t>(l)];
                    if (a == 0) continue;
                    for (int j = 0; j < d; ++j) {
                        std::int64_t b = s.matrix.at(l, j);
                        if (b == 0) continue;
                        next[static_cast<std::size_t>(i) * static_cast<std::size_t>(d)
                             + static_cast<std::size_t>(j)] += a * b;
                    }
                }
            prod = std::move(next);
        }
        // gram matrix P^T P; eigenvalues are squared singular values
        std::vector<BigFloat> gram(static_cast<std::size_t>(d) * static_cast<std::size_t>(d),
                                   BigFloat(0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                BigFloat acc2(0);
                for (int l = 0; l < d; ++l)
                    acc2 += prod[static_cast<std::size_t>(l) * static_cast<std::size_t>(d)
                                 + static_cast<std::size_t>(i)] *
                            prod[static_cast<std::size_t>(l) * static_cast<std::size_t>(d)
                                 + static_cast<std::size_t>(j)];
                gram[static_cast<std::size_t>(i) * static_cast<std::size_t>(d)
                     + static_cast<std::size_t>(j)] = acc2;
            }
        auto eig = jacobi_eigenvalues(std::move(gram), d);
        std::vector<double> svd_exponents;
        for (const auto& e : eig)
            svd_exponents.push_back(
                0.5 * static_cast<double>(log(e)) / teich);
        std::sort(svd_exponents.begin(), svd_exponents.end(), std::greater<double>());

        for (int i = 0; i < d; ++i) {
            CAPTURE(perm_text);
            CAPTURE(i);
            CHECK(std::abs(streaming[static_cast<std::size_t>(i)] -
                           svd_exponents[static_cast<std::size_t>(i)]) < 0.05);
        }
    }
}

#endif // DEVLAB_HAVE_MPFR
