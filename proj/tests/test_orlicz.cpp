#include "doctest.h"

#include <cmath>
#include <random>

#include "olg/common.hpp"
#include "olg/harness.hpp"
#include "olg/orlicz.hpp"

using namespace olg;

TEST_CASE("power N-function closed forms") {
    NFunction Phi = NFunction::power(2.0);
    CHECK(Phi(3.0) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(Phi.inverse(9.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(Phi.phi(2.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(Phi.phi_inverse(4.0) == doctest::Approx(2.0).epsilon(1e-15));
    // the Young conjugate of t^2 is t^2/4
    NFunction Psi = Phi.complementary();
    CHECK(Psi.is_power());
    CHECK(Psi.power_exponent() == doctest::Approx(2.0));
    CHECK(Psi(2.0) == doctest::Approx(1.0).epsilon(1e-12));
    // conjugate of c t^p: exponent p' and Young equality Phi(a)+Psi(phi(a)) = a phi(a)
    NFunction P3 = NFunction::power(3.0, 0.7);
    NFunction Q3 = P3.complementary();
    CHECK(Q3.power_exponent() == doctest::Approx(1.5).epsilon(1e-12));
    double a = 1.7, b = P3.phi(a);
    CHECK(P3(a) + Q3(b) == doctest::Approx(a * b).epsilon(1e-12));
    CHECK_THROWS(NFunction::power(1.0));
    CHECK_THROWS(NFunction::power(2.0, 0.0));
}

TEST_CASE("generic N-function matches its exact piecewise-quadratic integral") {
    // phi(t) = 2t tabulated: Phi(t) = t^2 exactly on [0, 10]
    NFunction G = NFunction::generic({{1.0, 2.0}, {4.0, 8.0}, {10.0, 20.0}});
    for (double t : {0.5, 1.0, 2.5, 7.0, 10.0})
        CHECK(G(t) == doctest::Approx(t * t).epsilon(1e-14));
    for (double y : {0.3, 1.0, 6.0, 50.0, 100.0})
        CHECK(G.inverse(y) == doctest::Approx(std::sqrt(y)).epsilon(1e-12));
    CHECK(G.phi(3.0) == doctest::Approx(6.0).epsilon(1e-14));
    // inverse and forward round-trip beyond the last knot (linear extension)
    CHECK(G.inverse(G(14.0)) == doctest::Approx(14.0).epsilon(1e-12));
    CHECK_THROWS(NFunction::generic({{1.0, 2.0}, {1.0, 3.0}}));
    CHECK_THROWS(NFunction::generic({{0.0, 1.0}}));
}

TEST_CASE("modular is exact for step function against step weight") {
    StepFunction f({0.0, 1.0, 2.0}, {2.0, 1.0});
    StepFunction u({0.0, 2.0}, {3.0});
    Integral m = modular(f, NFunction::power(2.0), Weight::from_step(u), 2.0);
    CHECK(m.converged());
    // Phi(2/2)*3 + Phi(1/2)*3 = 3 + 0.75
    CHECK(m.value == doctest::Approx(3.75).epsilon(1e-15));
}

TEST_CASE("Luxemburg norm equals the weighted p-norm for power N-functions") {
    GaugeNormOptions opt;
    opt.lambda_rel_tol = 1e-12;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> pd(1.1, 4.0);
    for (int i = 0; i < 40; ++i) {
        StepFunction f = generate_step(900 + i);
        StepFunction u = generate_step(5000 + i);
        if (pointwise_product(f, u).is_zero())
            continue;
        double p = pd(rng);
        KahanSum s;
        // integral f^p u, slab exact on the merged grid
        StepFunction merged = pointwise_sum(f, u);
        const auto& bp = merged.breakpoints();
        for (std::size_t j = 0; j + 1 < bp.size(); ++j) {
            double mid = 0.5 * (bp[j] + bp[j + 1]);
            s.add(std::pow(f(mid), p) * u(mid) * (bp[j + 1] - bp[j]));
        }
        double pnorm = std::pow(s.value(), 1.0 / p);
        double lux = gauge_norm(f, NFunction::power(p), Weight::from_step(u), opt);
        CHECK(lux == doctest::Approx(pnorm).epsilon(1e-8));
    }
}

TEST_CASE("gauge norm edge cases") {
    GaugeNormOptions opt;
    CHECK(gauge_norm(StepFunction(), NFunction::power(2.0), Weight::one(), opt) ==
          0.0);
    // f = 1 on R_+ has infinite L^2 norm: overflow marker
    CHECK(std::isinf(gauge_norm(AnalyticFunction::constant(1.0),
                                NFunction::power(2.0), Weight::one(), opt)));
}

TEST_CASE("delta-2 ratio of a power N-function is 2^p") {
    Delta2Result r = delta2_ratio(NFunction::power(3.0), 1.0);
    CHECK(r.bounded);
    CHECK(r.sup_ratio == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("down dual norm via the averaged function") {
    // h = chi_[0,1): (1/t) int_0^t h is 1 on (0,1], 1/t after; L2 norm sqrt(2)
    double n = down_dual_norm(StepFunction::indicator(1.0), NFunction::power(2.0),
                              Weight::one());
    CHECK(n == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("weights expose density, cumulative and mass") {
    Weight u = Weight::one();
    CHECK(u.infinite_mass());
    CHECK(u(3.0) == 1.0);
    CHECK(u.cumulative(2.0) == doctest::Approx(2.0).epsilon(1e-12));
    Weight s = Weight::from_step(StepFunction({0.0, 2.0}, {3.0}));
    CHECK(!s.infinite_mass());
    CHECK(s.cumulative(1.0) == doctest::Approx(3.0).epsilon(1e-12));
}
