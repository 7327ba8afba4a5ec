#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "devlab/error.hpp"
#include "devlab/interval_exchange.hpp"
#include "devlab/rng.hpp"

using namespace devlab;

namespace {

LabeledPermutation rotation_perm() { return LabeledPermutation::parse("AB/BA"); }
LabeledPermutation reversal4() { return LabeledPermutation::parse("ABCD/DCBA"); }

} // namespace

TEST_CASE("new_iet validates and normalizes") {
    auto iet = new_iet(rotation_perm(), {0.7, 0.3});
    CHECK(iet.size() == 2);
    CHECK(iet.lengths()[0] == doctest::Approx(0.7).epsilon(1e-12));
    double sum = iet.lengths()[0] + iet.lengths()[1];
    CHECK(std::abs(sum - 1.0) < 1e-12);

    // un-normalized input is scaled to the unit interval
    auto scaled = new_iet(rotation_perm(), {7.0, 3.0});
    CHECK(scaled.lengths()[0] == doctest::Approx(0.7).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(new_iet(rotation_perm(), {0.7, -0.3}),
                         doctest::Contains("positive"), Error);
    CHECK_THROWS_AS(new_iet(rotation_perm(), {0.7, 0.0}), Error);
    CHECK_THROWS_AS(new_iet(rotation_perm(), {0.7}), Error);
}

TEST_CASE("reducible permutations are rejected") {
    CHECK_THROWS_AS(LabeledPermutation::parse("AB/AB"), Error);
    try {
        LabeledPermutation::parse("ABCD/BACD");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RejectReducible);
    }
    // reversal permutations are irreducible
    CHECK_NOTHROW(LabeledPermutation::parse("ABCD/DCBA"));
    CHECK_NOTHROW(LabeledPermutation::parse("ABCDE/EDCBA"));
}

TEST_CASE("apply implements the rotation") {
    auto iet = new_iet(rotation_perm(), {0.7, 0.3});
    auto [y1, s1] = iet.apply(0.1);
    CHECK(y1 == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(s1 == 0); // A
    auto [y2, s2] = iet.apply(0.8);
    CHECK(y2 == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(s2 == 1); // B, translation -0.7
}

TEST_CASE("apply on the 4-symbol reversal") {
    auto iet = new_iet(reversal4(), {0.25, 0.25, 0.25, 0.25});
    // A sits last on the bottom: 0 -> 0.75
    auto [y, s] = iet.apply(0.0);
    CHECK(y == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(s == 0);
}

TEST_CASE("itinerary counts the rotation orbit") {
    auto iet = new_iet(rotation_perm(), {0.7, 0.3});
    auto it = iet.itinerary(0.0, 10);
    REQUIRE(it.symbols.size() == 10);
    CHECK(it.counts[0] == 7);
    CHECK(it.counts[1] == 3);

    auto single = iet.itinerary(0.4, 1);
    CHECK(single.counts[0] + single.counts[1] == 1);

    CHECK_THROWS_AS(iet.itinerary(0.1, 0), Error);
}

TEST_CASE("asymptotic cycle is the lengths vector") {
    auto iet = new_iet(reversal4(), {0.1, 0.2, 0.3, 0.4});
    auto cycle = iet.asymptotic_cycle();
    REQUIRE(cycle.size() == 4);
    CHECK(cycle[0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(cycle[3] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("long-run frequencies converge to the lengths") {
    // unique ergodicity: counts/n within 5/sqrt(n) of lengths
    const std::int64_t n = 1000000;
    Rng rng(20240501);
    for (int trial = 0; trial < 10; ++trial) {
        auto iet = new_iet(reversal4(), rng.simplex(4));
        double x0 = rng.uniform01();
        std::vector<std::int64_t> counts(4, 0);
        double x = x0;
        for (std::int64_t i = 0; i < n; ++i) {
            auto [y, s] = iet.apply(x);
            ++counts[static_cast<std::size_t>(s)];
            x = y;
        }
        double worst = 0.0;
        for (int a = 0; a < 4; ++a)
            worst = std::max(worst, std::abs(static_cast<double>(counts[static_cast<std::size_t>(a)]) / n -
                                             iet.lengths()[static_cast<std::size_t>(a)]));
        CHECK(worst < 5.0 / std::sqrt(static_cast<double>(n)));
        CHECK(worst < 1e-2);
    }
}

TEST_CASE("apply is injective off the cut points") {
    Rng rng(7771);
    auto iet = new_iet(reversal4(), rng.simplex(4));
    const int n = 10000;
    std::vector<double> images;
    images.reserve(n);
    for (int i = 0; i < n; ++i) images.push_back(iet.apply(rng.uniform01()).first);
    std::sort(images.begin(), images.end());
    // distinct inputs (a.s.) map to distinct outputs
    int collisions = 0;
    for (int i = 1; i < n; ++i)
        if (images[static_cast<std::size_t>(i)] == images[static_cast<std::size_t>(i - 1)])
            ++collisions;
    CHECK(collisions == 0);
}

TEST_CASE("apply preserves the uniform grid up to d cell shifts") {
    Rng rng(99);
    auto iet = new_iet(reversal4(), rng.simplex(4));
    const int n = 10000;
    std::vector<double> images;
    for (int i = 0; i < n; ++i)
        images.push_back(iet.apply((i + 0.5) / n).first);
    std::sort(images.begin(), images.end());
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(images[static_cast<std::size_t>(i)] - (i + 0.5) / n));
    CHECK(worst <= 4.0 / n + 1e-12);
}

TEST_CASE("points within 1e-15 of a cut classify deterministically") {
    auto iet = new_iet(rotation_perm(), {0.7, 0.3});
    double cut = iet.top_prefix()[1];
    auto a = iet.apply(cut);
    auto b = iet.apply(cut - 4e-16);
    auto c = iet.apply(cut + 4e-16);
    CHECK(a.second == 1);
    CHECK(b.second == 1); // snapped onto the cut, half-open: symbol B
    CHECK(c.second == 1);
    CHECK(iet.apply(cut - 1e-12).second == 0);
}
