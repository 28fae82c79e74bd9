// Acceptance harness: one line of output per criterion, nonzero exit on any
// failure.  argv[1] is the bundled scenario config used by the determinism
// check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "olg/common.hpp"
#include "olg/conditions.hpp"
#include "olg/harness.hpp"
#include "olg/operators.hpp"
#include "olg/orlicz.hpp"
#include "olg/rearrange.hpp"

using namespace olg;

namespace {

int failures = 0;

void report(int n, const char* what, bool ok, const std::string& detail = "") {
    std::printf("%s %2d. %s%s%s\n", ok ? "PASS" : "FAIL", n, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok)
        ++failures;
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// ---- 1. rearrangement exactness --------------------------------------------

bool criterion_rearrangement(std::string& detail) {
    for (std::uint64_t t = 0; t < 500; ++t) {
        StepFunction f = generate_step(1000 + t);
        StepFunction g = generate_step(5000 + t);
        StepFunction fs = decreasing_rearrangement(f).star;
        StepFunction gs = decreasing_rearrangement(g).star;

        for (std::size_t i = 1; i < fs.values().size(); ++i)
            if (fs.values()[i] > fs.values()[i - 1]) {
                detail = "f* not nonincreasing at seed " + std::to_string(1000 + t);
                return false;
            }

        std::vector<double> lambdas{0.0};
        for (double v : f.values()) {
            lambdas.push_back(v);
            lambdas.push_back(v * (1.0 - 1e-6));
            lambdas.push_back(v * (1.0 + 1e-6));
        }
        for (double lam : lambdas)
            if (std::abs(distribution(f, lam) - distribution(fs, lam)) > 1e-12) {
                detail = "equimeasurability broken at seed " + std::to_string(1000 + t);
                return false;
            }

        double lhs = pointwise_product(f, g).integral();
        double rhs = pointwise_product(fs, gs).integral();
        double scale = std::max({1.0, lhs, rhs});
        if (rhs - lhs < -1e-12 * scale) {
            detail = "Hardy-Littlewood violated at seed " + std::to_string(1000 + t);
            return false;
        }
    }
    return true;
}

// ---- 2. O'Neil convolution inequality --------------------------------------

bool criterion_oneil(std::string& detail) {
    Scenario sc;
    sc.name = "oneil2";
    sc.suite = "oneil2";
    sc.seed = 2024;
    sc.trials = 200;
    sc.probes = 20;
    SuiteResult r = verify_inequality_suite(sc);
    if (!r.pass || r.worst_slack < -1e-9) {
        detail = "suite worst slack " + std::to_string(r.worst_slack);
        return false;
    }
    StepFunction ind = StepFunction::indicator(1.0);
    double lhs = convolve(ind, ind).exact().rearranged_head_integral(1.0);
    double rhs = oneil_majorant(ind, ind, 1.0).rhs2;
    if (std::abs(lhs - 0.75) > 1e-15 || std::abs(rhs - 1.0) > 1e-15) {
        detail = "fixture lhs " + std::to_string(lhs) + " rhs " + std::to_string(rhs);
        return false;
    }
    return true;
}

// ---- 3. Hardy-Littlewood-Polya chain ---------------------------------------

bool criterion_hlp(std::string& detail) {
    Scenario sc;
    sc.name = "hlp";
    sc.suite = "hlp_chain";
    sc.seed = 2024;
    sc.trials = 200;
    sc.probes = 20;
    SuiteResult r = verify_inequality_suite(sc);
    detail = "worst slack " + std::to_string(r.worst_slack);
    return r.pass && r.worst_slack >= -1e-9;
}

// ---- 4. iterated-rearrangement majorization --------------------------------

bool criterion_majorization(std::string& detail) {
    Scenario sc;
    sc.name = "maj";
    sc.suite = "majorization16";
    sc.seed = 99;
    sc.trials = 100;
    sc.probes = 20;
    sc.inputs = nlohmann::json{{"grid_cells", 64}};
    SuiteResult r = verify_inequality_suite(sc);
    detail = "worst slack " + std::to_string(r.worst_slack);
    return r.pass && r.worst_slack >= -1e-9;
}

// ---- 5. Luxemburg norm vs weighted p-norm ----------------------------------

bool criterion_luxemburg(std::string& detail) {
    GaugeNormOptions opt; // lambda_rel_tol 1e-10
    for (std::uint64_t t = 0; t < 200; ++t) {
        std::mt19937_64 rng(trial_seed(42, t));
        std::uniform_real_distribution<double> pd(1.1, 4.0);
        double p = pd(rng);
        StepFunction f = generate_step(trial_seed(43, t));
        StepFunction u = generate_step(trial_seed(44, t));

        std::vector<double> powed(f.values().size());
        for (std::size_t i = 0; i < powed.size(); ++i)
            powed[i] = std::pow(f.values()[i], p);
        StepFunction fp(f.breakpoints(), std::move(powed));
        double exact = std::pow(pointwise_product(fp, u).integral(), 1.0 / p);

        double got = gauge_norm(f, NFunction::power(p), Weight::from_step(u), opt);
        if (exact == 0.0) {
            if (got != 0.0) {
                detail = "zero-mass case returned " + std::to_string(got);
                return false;
            }
            continue;
        }
        if (rel_err(got, exact) > 1e-8) {
            detail = "trial " + std::to_string(t) + ": got " + std::to_string(got) +
                     " want " + std::to_string(exact);
            return false;
        }
    }
    return true;
}

// ---- 6. radial rearrangement formula ---------------------------------------

// Distribution-inversion oracle for x -> k(|x|) on R^n, k nonincreasing:
// f*(t) = inf{lambda : omega_n * r(lambda)^n <= t} with
// r(lambda) = sup{s : k(s) > lambda}, found by bisection.
double radial_oracle(const std::function<double(double)>& k, int n, double t) {
    double omega = n == 1 ? 2.0 : M_PI;
    auto measure = [&](double lam) {
        if (!(k(0.0) > lam) && !(k(1e-15) > lam))
            return 0.0;
        double hi = 1.0;
        while (k(hi) > lam && hi < 1e9)
            hi *= 2.0;
        double lo = 0.0;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            (k(mid) > lam ? lo : hi) = mid;
        }
        return omega * std::pow(0.5 * (lo + hi), n);
    };
    double lo = 0.0, hi = std::max(k(0.0), k(1e-15));
    if (measure(0.0) <= t)
        return 0.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (measure(mid) <= t ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

bool criterion_radial(std::string& detail) {
    struct Case {
        const char* name;
        AnalyticFunction k;
        std::function<double(double)> raw;
    };
    std::vector<Case> cases;
    cases.push_back({"exp", AnalyticFunction::exp_decay(1.0),
                     [](double s) { return std::exp(-s); }});
    auto ind = [](double s) { return s < 1.0 ? 1.0 : 0.0; };
    cases.push_back({"indicator",
                     AnalyticFunction(ind, 1.0, std::nullopt, Monotone::decreasing),
                     ind});
    std::vector<double> ts = log_grid(1e-3, 20.0, 50);
    for (const Case& c : cases)
        for (int n : {1, 2})
            for (double t : ts) {
                double got = radial_profile(c.k, n, t);
                double want = radial_oracle(c.raw, n, t);
                double err = std::abs(got - want) /
                             std::max({std::abs(want), std::abs(got), 1e-9});
                if (err > 1e-6) {
                    detail = std::string(c.name) + " n=" + std::to_string(n) +
                             " t=" + std::to_string(t) + ": got " +
                             std::to_string(got) + " want " + std::to_string(want);
                    return false;
                }
            }
    return true;
}

// ---- 7. subadditive growth condition ---------------------------------------

bool criterion_growth(std::string& detail) {
    Scenario sc;
    sc.name = "growth";
    sc.suite = "growth_theorem11";
    sc.seed = 77;
    sc.trials = 100;
    sc.probes = 1000;
    SuiteResult r = verify_inequality_suite(sc);
    if (!r.pass || r.worst_slack < -1e-12) {
        detail = "random profiles: worst slack " + std::to_string(r.worst_slack);
        return false;
    }
    ConditionReport bad = check_growth(
        [](double x, double y) { return (x - y) * (x - y); }, {{1.0, 2.0, 4.0}});
    if (bad.verdict != Verdict::violated_witness) {
        detail = "counterexample not flagged as violated_witness";
        return false;
    }
    return true;
}

// ---- 8. pythagorean kernel sandwich ----------------------------------------

bool criterion_sandwich(std::string& detail) {
    const double c = std::pow(2.0, 0.75);
    std::mt19937_64 rng(0xACCE55);
    std::uniform_real_distribution<double> coord(1e-12, 10.0);
    for (int i = 0; i < 10000; ++i) {
        double x = coord(rng), y = coord(rng);
        double K = std::pow(x * x + y * y, -0.75);
        double mid = std::pow(x + y, -1.5);
        double scale = std::max(K, c * mid);
        if (K - mid / c < -1e-12 * scale || c * mid - K < -1e-12 * scale) {
            detail = "bound violated at (" + std::to_string(x) + ", " +
                     std::to_string(y) + ")";
            return false;
        }
    }
    for (double x : log_grid(1e-3, 1e3, 100)) {
        double K = std::pow(2.0 * x * x, -0.75);
        double upper = c * std::pow(2.0 * x, -1.5);
        if (std::abs(K - upper) > 1e-12 * K) {
            detail = "diagonal equality off at x = " + std::to_string(x);
            return false;
        }
    }
    return true;
}

// ---- 9. Kantorovic mixed-norm divergence -----------------------------------

bool criterion_kantorovich(std::string& detail) {
    QuadratureSpec q;
    q.rel_tol = 1e-11;
    q.abs_tol = 1e-14;
    for (double x : log_grid(0.1, 10.0, 21)) {
        AnalyticFunction row(
            [x](double y) { return std::pow(x * x + y * y, -1.5); }, 0.0,
            DecayHint::power(-3.0), Monotone::decreasing);
        Integral inner = integrate_tail(row, 0.0, q);
        if (!inner.converged() || rel_err(inner.value, 1.0 / (x * x)) > 1e-8) {
            detail = "inner integral at x = " + std::to_string(x) + ": " +
                     std::to_string(inner.value) + " want " +
                     std::to_string(1.0 / (x * x));
            return false;
        }
        if (rel_err(std::sqrt(inner.value), 1.0 / x) > 1e-8) {
            detail = "inner norm at x = " + std::to_string(x);
            return false;
        }
    }
    PowerParams p; // p = q = 2
    std::vector<double> eps;
    for (int k = 3; k <= 10; ++k)
        eps.push_back(std::ldexp(1.0, -k));
    ConditionReport r = kantorovich_probe(AnalyticKernel::pythagorean_power(-0.75), p, eps);
    if (r.verdict != Verdict::divergent_term) {
        detail = "verdict " + std::string(to_string(r.verdict));
        return false;
    }
    if (r.refinement_history.size() != eps.size()) {
        detail = "partial history has " + std::to_string(r.refinement_history.size()) +
                 " entries";
        return false;
    }
    for (std::size_t i = 1; i < r.refinement_history.size(); ++i) {
        double ratio = r.refinement_history[i] / r.refinement_history[i - 1];
        if (!(ratio > 1.8 && ratio < 2.2)) {
            detail = "partial growth ratio " + std::to_string(ratio);
            return false;
        }
    }
    return true;
}

// ---- 10. power-condition fixture -------------------------------------------

bool criterion_hls(std::string& detail) {
    PowerParams p;
    p.p = 4.0 / 3.0;
    p.q = 4.0;
    auto reports = check_power_conditions(AnalyticFunction::power(-0.5), p,
                                          log_grid(1e-2, 1e2, 25));
    for (const auto& r : reports)
        if (r.condition_id == "power.v_prime.a") {
            double want = 16.0 / 15.0;
            detail = "sup " + std::to_string(r.best_constant_estimate) + " want " +
                     std::to_string(want);
            return r.verdict == Verdict::holds_estimated &&
                   std::abs(r.best_constant_estimate - want) <= 1e-3 * want;
        }
    detail = "report power.v_prime.a missing";
    return false;
}

// ---- 11. Hardy best constant -----------------------------------------------

bool criterion_hardy_constant(std::string& detail) {
    NormSpec l2{NFunction::power(2.0), Weight::one()};
    OperatorSpec avg;
    avg.kind = OperatorSpec::Kind::averaging;
    std::vector<PosFunction> family;
    for (double e : {0.2, 0.1, 0.05, 0.02})
        family.push_back(AnalyticFunction::power(-0.5 + e, 1.0));
    BestConstant c = estimate_best_constant(avg, l2, l2, family);
    detail = "estimate " + std::to_string(c.estimate);
    if (c.ratios.size() != 4)
        return false;
    for (std::size_t i = 1; i < c.ratios.size(); ++i)
        if (c.ratios[i] <= c.ratios[i - 1])
            return false;
    return c.estimate >= 1.8 && c.estimate < 2.0;
}

// ---- 12. kernel-bound suites -----------------------------------------------

bool criterion_kernel_suites(std::string& detail) {
    Scenario tb;
    tb.name = "tb";
    tb.suite = "tighter_bound";
    tb.seed = 13;
    tb.trials = 100;
    tb.probes = 20;
    SuiteResult rt = verify_inequality_suite(tb);
    if (!rt.pass) {
        detail = "tighter_bound worst slack " + std::to_string(rt.worst_slack);
        return false;
    }
    Scenario ok;
    ok.name = "okb";
    ok.suite = "oneil_kernel_bound";
    ok.seed = 13;
    ok.trials = 100;
    ok.probes = 10;
    SuiteResult ro = verify_inequality_suite(ok);
    detail = "oneil_kernel_bound worst slack " + std::to_string(ro.worst_slack);
    return ro.pass && ro.worst_slack >= -1e-6;
}

// ---- 13. determinism of the bundled config ---------------------------------

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion_determinism(const std::filesystem::path& config, std::string& detail) {
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "olg_acceptance";
    fs::remove_all(base);
    fs::path da = base / "a", db = base / "b";
    RunOutcome ra = run_scenario_file(config, da);
    RunOutcome rb = run_scenario_file(config, db);
    if (ra.exit_code != 0 || rb.exit_code != 0) {
        detail = "config run exit codes " + std::to_string(ra.exit_code) + ", " +
                 std::to_string(rb.exit_code);
        return false;
    }
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(da)) {
        if (e.path().extension() != ".csv")
            continue;
        ++compared;
        fs::path other = db / e.path().filename();
        if (!fs::exists(other) || slurp(e.path()) != slurp(other)) {
            detail = "mismatch in " + e.path().filename().string();
            return false;
        }
    }
    fs::remove_all(base);
    detail = std::to_string(compared) + " CSVs byte-identical";
    return compared > 0;
}

void run(int n, const char* what, const std::function<bool(std::string&)>& f) {
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
        ok = f(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "[%.1fs]", secs);
    detail = detail.empty() ? std::string(buf) : detail + " " + buf;
    report(n, what, ok, detail);
}

} // namespace

int main(int argc, char** argv) {
    std::filesystem::path config =
        argc > 1 ? argv[1] : std::filesystem::path("configs/paper_examples.json");

    run(1, "rearrangement exactness on 500 random step functions", criterion_rearrangement);
    run(2, "O'Neil convolution inequality suite + closed-form fixture", criterion_oneil);
    run(3, "two-step derivation chain holds on random trials", criterion_hlp);
    run(4, "iterated-rearrangement majorization on 64x64 grid kernels", criterion_majorization);
    run(5, "Luxemburg norm matches weighted p-norms to 1e-8", criterion_luxemburg);
    run(6, "radial rearrangement formula vs distribution-inversion oracle", criterion_radial);
    run(7, "growth condition on random profiles + quadratic counterexample", criterion_growth);
    run(8, "kernel sandwich bounds with diagonal equality", criterion_sandwich);
    run(9, "Kantorovic probe: closed-form inner norm and divergent partials", criterion_kantorovich);
    run(10, "power-condition fixture: sup equals 16/15", criterion_hls);
    run(11, "Hardy averaging best constant approaches 2 from below", criterion_hardy_constant);
    run(12, "tighter-bound and kernel-majorant suites on the exponential profile",
        criterion_kernel_suites);
    run(13, "bundled config is byte-deterministic across runs",
        [&](std::string& d) { return criterion_determinism(config, d); });

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 13 criteria passed\n");
    return 0;
}
