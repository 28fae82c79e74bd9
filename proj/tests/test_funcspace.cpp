#include "doctest.h"

#include <cmath>

#include "olg/analytic_function.hpp"
#include "olg/quadrature.hpp"
#include "olg/step_function.hpp"

using namespace olg;

TEST_CASE("step function slab arithmetic is exact") {
    StepFunction f({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 2.0});
    CHECK(f.integral() == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(f.integral(0.5, 2.5) == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(f(0.0) == 1.0);
    CHECK(f(1.5) == 3.0);
    CHECK(f(3.0) == 0.0); // zero beyond the support
    CHECK(f(2.0) == 2.0); // right-continuous at breakpoints
    CHECK(f.max_value() == 3.0);
    CHECK(f.support_end() == 3.0);
}

TEST_CASE("step function constructors validate their input") {
    CHECK_THROWS(StepFunction({0.0, 1.0, 1.0}, {1.0, 2.0}));
    CHECK_THROWS(StepFunction({0.5, 1.0}, {1.0}));
    CHECK_THROWS(StepFunction({0.0, 1.0}, {-1.0}));
    CHECK_THROWS(StepFunction({0.0, 1.0, 2.0}, {1.0}));
    CHECK(StepFunction().is_zero());
    CHECK(StepFunction::indicator(2.0).integral() == 2.0);
    CHECK(StepFunction::constant(3.0, 2.0).integral() == 6.0);
}

TEST_CASE("pointwise product and sum merge breakpoints") {
    StepFunction f({0.0, 2.0}, {2.0});
    StepFunction g({0.0, 1.0, 3.0}, {3.0, 1.0});
    StepFunction p = pointwise_product(f, g);
    CHECK(p(0.5) == 6.0);
    CHECK(p(1.5) == 2.0);
    CHECK(p(2.5) == 0.0);
    CHECK(p.integral() == doctest::Approx(8.0).epsilon(1e-15));
    StepFunction s = pointwise_sum(f, g);
    CHECK(s(0.5) == 5.0);
    CHECK(s(1.5) == 3.0);
    CHECK(s(2.5) == 1.0);
}

TEST_CASE("piecewise linear tent: values, integral, rearranged head integral") {
    PiecewiseLinear h({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    CHECK(h(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(h(1.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(h.integral(0.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    // h* (t) = 1 - t/2, so the head integral is t - t^2/4
    for (double t : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        double want = t < 2.0 ? t - t * t / 4.0 : 1.0;
        CHECK(h.rearranged_head_integral(t) ==
              doctest::Approx(want).epsilon(1e-12));
    }
    StepFunction r = h.resample({0.0, 1.0, 2.0});
    CHECK(r(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r(1.5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("adaptive quadrature on bounded intervals") {
    AnalyticFunction e = AnalyticFunction::exp_decay(1.0);
    Integral r = integrate(e, 0.0, 1.0);
    CHECK(r.converged());
    CHECK(r.value == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));

    StepFunction f({0.0, 1.0, 2.0}, {2.0, 1.0});
    CHECK(integrate(f, 0.5, 1.5).value == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("tail integration uses decay hints and detects divergence") {
    Integral expo = integrate_tail(AnalyticFunction::exp_decay(1.0), 2.0);
    CHECK(expo.converged());
    CHECK(expo.value == doctest::Approx(std::exp(-2.0)).epsilon(1e-8));

    Integral pow2 = integrate_tail(AnalyticFunction::power(-2.0), 1.0);
    CHECK(pow2.converged());
    CHECK(pow2.value == doctest::Approx(1.0).epsilon(1e-8));

    Integral pow1 = integrate_tail(AnalyticFunction::power(-1.0), 1.0);
    CHECK(pow1.divergent());
}

TEST_CASE("head singularities integrate or diverge by power") {
    Integral half = integrate(AnalyticFunction::power(-0.5), 0.0, 1.0);
    CHECK(half.converged());
    CHECK(half.value == doctest::Approx(2.0).epsilon(1e-8));

    Integral harmonic = integrate(AnalyticFunction::power(-1.0), 0.0, 1.0);
    CHECK(harmonic.divergent());
}

TEST_CASE("discretize produces exact cell averages for smooth functions") {
    AnalyticFunction lin([](double t) { return t; }, 2.0);
    StepFunction d = discretize(lin, {0.0, 1.0, 2.0});
    CHECK(d(0.5) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(d(1.5) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("analytic function domain bookkeeping") {
    AnalyticFunction p = AnalyticFunction::power(-0.5, 1.0);
    CHECK(p.bounded_domain());
    CHECK(p(0.25) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p(2.0) == 0.0); // zero outside the domain
    CHECK(std::isinf(AnalyticFunction::constant(1.0).domain_end()));
}
