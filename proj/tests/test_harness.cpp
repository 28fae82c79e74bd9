#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "olg/harness.hpp"
#include "olg/rearrange.hpp"

using namespace olg;

TEST_CASE("generators are deterministic and respect their caps") {
    StepFunction a = generate_step(7);
    StepFunction b = generate_step(7);
    CHECK(a.breakpoints() == b.breakpoints());
    CHECK(a.values() == b.values());
    CHECK(generate_step(8).values() != a.values());

    StepFunction d = generate_decreasing_step(7);
    for (std::size_t i = 1; i < d.values().size(); ++i)
        CHECK(d.values()[i] <= d.values()[i - 1]);

    GenParams big;
    big.max_slabs = 1001;
    CHECK_THROWS_AS(generate_step(1, big), std::invalid_argument);
    GenParams grid;
    grid.grid_cells = 513;
    CHECK_THROWS_AS(generate_grid_kernel(1, grid), std::invalid_argument);
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("apply: identity, zero, and Hardy operators") {
    StepFunction f({0.0, 1.0, 2.0}, {2.0, 1.0});
    OperatorSpec id;
    PosFunction r = apply(id, f);
    CHECK(std::get<StepFunction>(r).values() == f.values());

    OperatorSpec z;
    z.kind = OperatorSpec::Kind::zero;
    CHECK(std::get<StepFunction>(apply(z, f)).is_zero());

    OperatorSpec hi;
    hi.kind = OperatorSpec::Kind::hardy_I;
    PosFunction Ifv = apply(hi, f);
    CHECK(std::get<AnalyticFunction>(Ifv)(1.5) ==
          doctest::Approx(2.5).epsilon(1e-14));

    OperatorSpec avg;
    avg.kind = OperatorSpec::Kind::averaging;
    PosFunction Afv = apply(avg, f);
    CHECK(std::get<AnalyticFunction>(Afv)(2.0) ==
          doctest::Approx(1.5).epsilon(1e-9));

    // operators that need step input reject analytic input
    OperatorSpec conv;
    conv.kind = OperatorSpec::Kind::convolution;
    conv.conv_kernel = StepFunction::indicator(1.0);
    CHECK_THROWS(apply(conv, AnalyticFunction::constant(1.0)));
    CHECK(std::get<AnalyticFunction>(apply(conv, StepFunction::indicator(1.0)))(1.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("apply with a grid kernel produces an exact step output") {
    OperatorSpec op;
    op.kind = OperatorSpec::Kind::kernel;
    op.kernel = Kernel{Grid2DKernel({0.0, 1.0}, {0.0, 1.0}, {1.0})};
    PosFunction r = apply(op, StepFunction::indicator(1.0));
    const auto& s = std::get<StepFunction>(r);
    CHECK(s(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.support_end() == 1.0);
}

TEST_CASE("best-constant estimation: identity, zero, and skip notes") {
    NormSpec l2{NFunction::power(2.0), Weight::one()};
    std::vector<PosFunction> family{StepFunction::indicator(1.0),
                                    StepFunction({0.0, 2.0}, {3.0})};
    OperatorSpec id;
    BestConstant c = estimate_best_constant(id, l2, l2, family);
    CHECK(c.estimate == doctest::Approx(1.0).epsilon(1e-9));

    OperatorSpec z;
    z.kind = OperatorSpec::Kind::zero;
    CHECK(estimate_best_constant(z, l2, l2, family).estimate == 0.0);

    std::vector<PosFunction> zeros{StepFunction()};
    CHECK_THROWS_AS(estimate_best_constant(id, l2, l2, zeros), std::runtime_error);

    std::vector<PosFunction> mixed{StepFunction(), StepFunction::indicator(1.0)};
    BestConstant m = estimate_best_constant(id, l2, l2, mixed);
    CHECK(m.ratios.size() == 1);
    CHECK(m.notes.size() == 1);
}

TEST_CASE("Hardy averaging constants approach 2 as the family sharpens") {
    NormSpec l2{NFunction::power(2.0), Weight::one()};
    OperatorSpec avg;
    avg.kind = OperatorSpec::Kind::averaging;
    std::vector<double> eps{0.2, 0.1, 0.05};
    std::vector<PosFunction> family;
    for (double e : eps)
        family.push_back(AnalyticFunction::power(-0.5 + e, 1.0));
    BestConstant c = estimate_best_constant(avg, l2, l2, family);
    REQUIRE(c.ratios.size() == 3);
    for (std::size_t i = 0; i < eps.size(); ++i) {
        double want = std::sqrt(1.0 + 2.0 * eps[i]) / (0.5 + eps[i]);
        CHECK(c.ratios[i] == doctest::Approx(want).epsilon(1e-4));
    }
    CHECK(c.ratios[2] > c.ratios[1]);
    CHECK(c.ratios[1] > c.ratios[0]);
    CHECK(c.estimate >= 1.8);
    CHECK(c.estimate < 2.0);
}

TEST_CASE("suites are deterministic for a fixed seed") {
    Scenario sc;
    sc.name = "det";
    sc.suite = "oneil2";
    sc.seed = 314;
    sc.trials = 8;
    sc.probes = 6;
    SuiteResult a = verify_inequality_suite(sc);
    SuiteResult b = verify_inequality_suite(sc);
    CHECK(a.pass);
    CHECK(suite_csv("det", a) == suite_csv("det", b));
    CHECK(a.worst_slack == b.worst_slack);
}

TEST_CASE("unknown suites are rejected") {
    Scenario sc;
    sc.suite = "nope";
    CHECK_THROWS_AS(verify_inequality_suite(sc), std::invalid_argument);
}

TEST_CASE("suite CSV has the documented columns and one row per probe") {
    Scenario sc;
    sc.suite = "tighter_bound";
    sc.seed = 5;
    sc.trials = 3;
    sc.probes = 4;
    SuiteResult r = verify_inequality_suite(sc);
    std::string csv = suite_csv("tb", r);
    CHECK(csv.rfind("scenario,trial,probe,lhs,rhs,slack,verdict\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4); // header + 3 trials
    CHECK(csv.find("tb,0,") != std::string::npos);
}

TEST_CASE("run_scenarios: empty list, pass aggregation, and bad config") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "olg_harness_test";
    fs::remove_all(dir);

    RunOutcome empty = run_scenarios(nlohmann::json{{"scenarios", nlohmann::json::array()}}, dir);
    CHECK(empty.exit_code == 0);
    CHECK(empty.results.empty());

    nlohmann::json cfg{{"scenarios",
                        {{{"name", "t"}, {"suite", "tighter_bound"}, {"seed", 3},
                          {"trials", 3}, {"probes", 5}}}}};
    RunOutcome one = run_scenarios(cfg, dir);
    CHECK(one.exit_code == 0);
    CHECK(fs::exists(dir / "t.csv"));
    CHECK(fs::exists(dir / "t.json"));

    CHECK_THROWS(run_scenarios(nlohmann::json{{"wrong", 1}}, dir));
    fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK_THROWS(run_scenario_file(bad, dir));
    fs::remove_all(dir);
}

TEST_CASE("kantorovich suite honours the expected-divergence marker") {
    Scenario sc;
    sc.suite = "kantorovich";
    sc.expect = "divergent";
    SuiteResult r = verify_inequality_suite(sc);
    CHECK(r.pass);
    sc.expect = "pass"; // the divergence is real, so plain "pass" must fail
    CHECK(!verify_inequality_suite(sc).pass);
}
