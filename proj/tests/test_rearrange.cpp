#include "doctest.h"

#include <cmath>

#include "olg/harness.hpp"
#include "olg/rearrange.hpp"

using namespace olg;

TEST_CASE("rearrangement is exact, nonincreasing, and equimeasurable") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        StepFunction f = generate_step(seed);
        StepFunction fs = decreasing_rearrangement(f).star;
        const auto& v = fs.values();
        for (std::size_t i = 1; i < v.size(); ++i)
            CHECK(v[i] < v[i - 1]); // ties are merged, so strictly decreasing
        for (double raw : f.values()) {
            for (double lambda : {raw * 0.999999, raw}) {
                if (lambda < 0.0)
                    continue;
                CHECK(distribution(f, lambda) ==
                      doctest::Approx(distribution(fs, lambda)).epsilon(1e-12));
            }
        }
        CHECK(fs.integral() == doctest::Approx(f.integral()).epsilon(1e-12));
    }
}

TEST_CASE("closed-form rearrangement") {
    StepFunction f({0.0, 1.0, 2.0, 4.0}, {1.0, 3.0, 2.0});
    StepFunction fs = decreasing_rearrangement(f).star;
    CHECK(fs.breakpoints() == std::vector<double>{0.0, 1.0, 3.0, 4.0});
    CHECK(fs.values() == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("f** dominates f*") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        StepFunction f = generate_step(seed);
        StepFunction fs = decreasing_rearrangement(f).star;
        if (fs.is_zero())
            continue;
        for (double t : {0.3, 1.0, 2.5, fs.support_end()})
            CHECK(double_star(f, t) >= fs(t) - 1e-12);
    }
}

TEST_CASE("Hardy-Littlewood: integral fg <= integral f*g*") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        StepFunction f = generate_step(2 * seed);
        StepFunction g = generate_step(2 * seed + 1);
        double lhs = pointwise_product(f, g).integral();
        double rhs = pointwise_product(decreasing_rearrangement(f).star,
                                       decreasing_rearrangement(g).star)
                         .integral();
        double scale = std::max({lhs, rhs, 1.0});
        CHECK(rhs - lhs >= -1e-12 * scale);
    }
}

TEST_CASE("radial profile closed forms for n = 1 and n = 2") {
    AnalyticFunction k([](double s) { return std::exp(-s); }, 0.0,
                       DecayHint::exponential(1.0), Monotone::decreasing);
    // n = 1: K*(t) = k(t/2); n = 2: K*(t) = k(sqrt(t/pi))
    CHECK(radial_profile(k, 1, 3.0) ==
          doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
    CHECK(radial_profile(k, 2, 3.0) ==
          doctest::Approx(std::exp(-std::sqrt(3.0 / M_PI))).epsilon(1e-12));
    AnalyticFunction flat([](double) { return 1.0; }, 0.0, std::nullopt,
                          Monotone::none);
    CHECK_THROWS(radial_profile(flat, 1, 1.0)); // must be flagged decreasing
    CHECK_THROWS(radial_profile(k, 0, 1.0));
    CHECK_THROWS(radial_profile(k, 1, 0.0));
}

TEST_CASE("iterated rearrangement fixes already-monotone kernels") {
    Grid2DKernel K({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}, {4.0, 3.0, 2.0, 1.0},
                   Monotone::decreasing, Monotone::decreasing);
    Grid2DKernel L = iterated_rearrangement(K);
    for (double x : {0.5, 1.5})
        for (double y : {0.5, 1.5})
            CHECK(L(x, y) == K(x, y));
    CHECK(L.mono_x() == Monotone::decreasing);
    CHECK(L.mono_y() == Monotone::decreasing);
}

TEST_CASE("iterated rearrangement sorts rows then columns") {
    // K has rows (1,3) and (2,0); stage 1 gives rows (3,1) and (2,0); stage 2
    // sorts each unit column: (3,2) then (1,0) -> top-left cell is 3.
    Grid2DKernel K({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}, {1.0, 3.0, 2.0, 0.0});
    Grid2DKernel L = iterated_rearrangement(K);
    CHECK(L(0.5, 0.5) == 3.0);
    CHECK(L(1.5, 0.5) == 2.0);
    CHECK(L(0.5, 1.5) == 1.0);
    CHECK(L(1.5, 1.5) == 0.0);
}

TEST_CASE("bivariate rearrangement of a grid kernel flattens by area") {
    Grid2DKernel K({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}, {1.0, 3.0, 2.0, 0.0});
    // areas: value 3 on area 1, value 2 on area 1, value 1 on area 1
    CHECK(bivariate_rearrangement(K, 0.5).value == 3.0);
    CHECK(bivariate_rearrangement(K, 1.5).value == 2.0);
    CHECK(bivariate_rearrangement(K, 2.5).value == 1.0);
    CHECK(bivariate_rearrangement(K, 3.5).value == 0.0);
}

TEST_CASE("bivariate rearrangement of radial kernels: both variants") {
    AnalyticFunction k([](double s) { return std::exp(-s); }, 0.0,
                       DecayHint::exponential(1.0), Monotone::decreasing);
    AnalyticKernel K = AnalyticKernel::radial_profile(k);
    BivariateValue paper = bivariate_rearrangement(K, 4.0, BivariateMode::paper_variant);
    CHECK(paper.rearrangeable);
    CHECK(paper.value == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    BivariateValue mc =
        bivariate_rearrangement(K, 4.0, BivariateMode::measure_correct);
    CHECK(mc.rearrangeable);
    // quarter-plane super-level sets: K*(t) = k(2 sqrt(t/pi))
    CHECK(mc.value ==
          doctest::Approx(std::exp(-2.0 * std::sqrt(4.0 / M_PI))).epsilon(1e-12));
}

TEST_CASE("grid kernel validates monotone flags and shapes") {
    CHECK_THROWS(Grid2DKernel({0.0, 1.0}, {0.0, 1.0}, {1.0, 2.0}));
    CHECK_THROWS(Grid2DKernel({0.0, 1.0, 2.0}, {0.0, 1.0}, {1.0, 2.0},
                              Monotone::decreasing)); // values increase in x
    Grid2DKernel K({0.0, 1.0}, {0.0, 2.0}, {5.0});
    CHECK(K(0.5, 1.0) == 5.0);
    CHECK(K(1.5, 1.0) == 0.0);
    StepFunction sec = K.x_section(0.5);
    CHECK(sec(1.0) == 5.0);
}
