#include "doctest.h"

#include <cmath>

#include "olg/common.hpp"
#include "olg/conditions.hpp"

using namespace olg;

namespace {

const ConditionReport& find_report(const std::vector<ConditionReport>& reports,
                                   const std::string& id) {
    for (const auto& r : reports)
        if (r.condition_id == id)
            return r;
    REQUIRE(false);
    return reports.front();
}

} // namespace

TEST_CASE("growth condition holds for the exponential sum kernel") {
    std::vector<std::array<double, 3>> triples;
    for (double y : {0.1, 0.5, 1.0})
        for (double dz : {0.2, 1.0})
            for (double dx : {0.3, 2.0})
                triples.push_back({y, y + dz, y + dz + dx});
    ConditionReport ok = check_growth(
        [](double x, double y) { return std::exp(-(x + y)); }, triples);
    CHECK(ok.verdict == Verdict::holds_estimated);
    // (x-y)^2 violates subadditive growth
    ConditionReport bad = check_growth(
        [](double x, double y) { return (x - y) * (x - y); }, {{1.0, 2.0, 4.0}});
    CHECK(bad.verdict == Verdict::violated_witness);
    REQUIRE(bad.witnesses.size() == 1);
    CHECK(bad.witnesses[0].lhs == doctest::Approx(9.0));
    CHECK(bad.witnesses[0].rhs == doctest::Approx(5.0));
    CHECK_THROWS(check_growth([](double, double) { return 0.0; }, {{1.0, 1.0, 2.0}}));
}

TEST_CASE("weighted Hardy conditions: w(y) = 1/y gives required constant 1/2") {
    // Phi1 = Phi2 = t^2, u = v = t_w = 1, K = chi_{y<x}: alpha(lambda, x) is
    // the tail integral of (lambda w)^2, and the largest admissible c is 2
    // uniformly in (lambda, x).
    WeightedSetup s{NFunction::power(2.0),
                    NFunction::power(2.0),
                    Weight::from_analytic(AnalyticFunction::power(-1.0), true),
                    Weight::one(),
                    Weight::one(),
                    Weight::one(),
                    {},
                    true,
                    {}};
    ConditionGrids g;
    g.lambda_grid = log_grid(0.1, 10.0, 5);
    g.x_grid = log_grid(0.2, 5.0, 7);
    auto reports = check_theorem2(s, g);
    REQUIRE(reports.size() == 1); // hardy_indicator: only the first condition
    const ConditionReport& a = reports[0];
    CHECK(a.condition_id == "theorem2.alpha");
    CHECK(a.verdict == Verdict::holds_estimated);
    CHECK(a.best_constant_estimate == doctest::Approx(0.5).epsilon(1e-6));
    for (const auto& pt : a.points)
        CHECK(pt.required_constant == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("theorem-7 functionals diverge verbatim for Phi = t^2, u = 1") {
    ConditionGrids g;
    g.lambda_grid = log_grid(0.5, 2.0, 3);
    g.x_grid = log_grid(0.5, 2.0, 3);
    auto reports = check_theorem7(NFunction::power(2.0), Weight::one(), g);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].verdict == Verdict::divergent_term);
    CHECK(reports[1].verdict == Verdict::divergent_term);
}

TEST_CASE("theorem-7 rejects finite-mass weights") {
    ConditionGrids g = ConditionGrids::defaults();
    CHECK_THROWS_AS(check_theorem7(NFunction::power(2.0),
                                   Weight::from_step(StepFunction::indicator(1.0)),
                                   g),
                    std::invalid_argument);
}

TEST_CASE("power conditions on the Riesz profile t^{-1/2}") {
    PowerParams p;
    p.p = 4.0 / 3.0;
    p.q = 4.0;
    auto reports = check_power_conditions(AnalyticFunction::power(-0.5), p,
                                          log_grid(1e-2, 1e2, 25));
    const ConditionReport& a = find_report(reports, "power.v_prime.a");
    CHECK(a.verdict == Verdict::holds_estimated);
    CHECK(a.best_constant_estimate ==
          doctest::Approx(16.0 / 15.0).epsilon(1e-3));
    // the companion display grows without bound; it must not read as "holds"
    CHECK(find_report(reports, "power.v_prime.b").verdict ==
          Verdict::inconclusive_growth);
    // (vii') forces divergence for this profile
    CHECK(find_report(reports, "power.vii_prime").verdict ==
          Verdict::divergent_term);
    // (vi')/(viii') need the undefined exponent r
    CHECK(find_report(reports, "power.vi_prime.a").verdict ==
          Verdict::inconclusive_growth);
    CHECK(find_report(reports, "power.viii_prime").notes.size() == 1);
}

TEST_CASE("power conditions accept a zero profile vacuously") {
    PowerParams p;
    auto reports =
        check_power_conditions(StepFunction(), p, log_grid(0.1, 10.0, 5));
    CHECK(reports.size() == 6);
    for (const auto& r : reports)
        CHECK(r.verdict == Verdict::holds_estimated);
}

TEST_CASE("theorem-12 c1 matches the closed form for the exponential kernel") {
    HardyKernels hk(Kernel{AnalyticKernel::sum_profile(AnalyticFunction::exp_decay(1.0))});
    PowerParams p; // p = q = 2
    std::vector<double> xs = log_grid(0.2, 5.0, 9);
    auto reports = check_theorem12(hk, p, Weight::one(), Weight::one(), xs);
    const ConditionReport& c1 = find_report(reports, "theorem12.c1");
    CHECK(c1.verdict == Verdict::holds_estimated);
    for (const auto& pt : c1.points) {
        double x = pt.x;
        double lhs = (1.0 - std::exp(-x)) * (1.0 - std::exp(-x)) *
                     (1.0 - std::exp(-2.0 * x)) / 2.0;
        CHECK(pt.required_constant == doctest::Approx(lhs / x).epsilon(2e-3));
    }
}

TEST_CASE("Kantorovic probe flags the Riesz kernel divergence") {
    PowerParams p; // p = q = 2
    std::vector<double> eps;
    for (int k = 3; k <= 10; ++k)
        eps.push_back(std::ldexp(1.0, -k));
    ConditionReport r =
        kantorovich_probe(AnalyticKernel::pythagorean_power(-0.75), p, eps);
    CHECK(r.verdict == Verdict::divergent_term);
    CHECK(r.metrics.at("inner_norm_log_slope") == doctest::Approx(-1.0).epsilon(1e-3));
    REQUIRE(r.refinement_history.size() == eps.size());
    for (std::size_t i = 1; i < r.refinement_history.size(); ++i) {
        double ratio = r.refinement_history[i] / r.refinement_history[i - 1];
        CHECK(ratio > 1.8);
        CHECK(ratio < 2.2);
    }
    CHECK_THROWS(kantorovich_probe(AnalyticKernel::pythagorean_power(-0.75), p,
                                   {0.5, 0.5}));
}

TEST_CASE("default grids have the documented shape") {
    ConditionGrids g = ConditionGrids::defaults();
    CHECK(g.lambda_grid.size() == 25);
    CHECK(g.x_grid.size() == 49);
    CHECK(g.lambda_grid.front() == doctest::Approx(1e-4));
    CHECK(g.x_grid.back() == doctest::Approx(1e3));
}
