#include "olg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "olg/common.hpp"
#include "olg/json_io.hpp"
#include "olg/rearrange.hpp"

namespace olg {

namespace {

void check_caps(const GenParams& p) {
    if (p.max_slabs == 0 || p.max_slabs > 1000)
        throw std::invalid_argument("GenParams: max_slabs must be in [1, 1000]");
    if (p.grid_cells == 0 || p.grid_cells > 512)
        throw std::invalid_argument("GenParams: grid_cells must be in [1, 512]");
}

double fmt_scale(double lhs, double rhs) {
    return std::max({rhs, lhs, 1e-300});
}

} // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    // splitmix64 over the combined state
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

StepFunction generate_step(std::uint64_t seed, const GenParams& p) {
    check_caps(p);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> nslabs(1, p.max_slabs);
    std::uniform_real_distribution<double> len(0.01, p.max_slab_len);
    std::uniform_real_distribution<double> val(0.0, p.max_value);
    std::size_t n = nslabs(rng);
    std::vector<double> bp{0.0}, v(n);
    for (std::size_t i = 0; i < n; ++i) {
        bp.push_back(bp.back() + len(rng));
        v[i] = val(rng);
    }
    return StepFunction(std::move(bp), std::move(v));
}

StepFunction generate_decreasing_step(std::uint64_t seed, const GenParams& p) {
    return decreasing_rearrangement(generate_step(seed, p)).star;
}

StepFunction generate_decreasing_kernel_profile(std::uint64_t seed,
                                                const GenParams& p) {
    return generate_decreasing_step(seed, p);
}

Grid2DKernel generate_grid_kernel(std::uint64_t seed, const GenParams& p) {
    check_caps(p);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> len(0.05, p.max_slab_len);
    std::uniform_real_distribution<double> val(0.0, p.max_value);
    std::size_t n = p.grid_cells;
    std::vector<double> xb{0.0}, yb{0.0};
    for (std::size_t i = 0; i < n; ++i)
        xb.push_back(xb.back() + len(rng));
    for (std::size_t j = 0; j < n; ++j)
        yb.push_back(yb.back() + len(rng));
    std::vector<double> cells(n * n);
    for (auto& c : cells)
        c = val(rng);
    return Grid2DKernel(std::move(xb), std::move(yb), std::move(cells));
}

PosFunction apply(const OperatorSpec& op, const PosFunction& f,
                  const QuadratureSpec& q) {
    using Kind = OperatorSpec::Kind;
    auto require_step = [&]() -> const StepFunction& {
        const auto* s = std::get_if<StepFunction>(&f);
        if (!s)
            throw std::invalid_argument("apply: this operator needs a step input");
        return *s;
    };
    switch (op.kind) {
    case Kind::identity:
        return f;
    case Kind::zero:
        return StepFunction();
    case Kind::averaging: {
        std::optional<double> head = 0.0;
        std::optional<DecayHint> tail = DecayHint::power(-1.0);
        if (const auto* a = std::get_if<AnalyticFunction>(&f)) {
            if (a->head_power() && *a->head_power() < 0.0)
                head = *a->head_power();
            if (!a->bounded_domain() && a->tail_hint() &&
                a->tail_hint()->kind == DecayHint::Kind::power &&
                a->tail_hint()->param >= -1.0)
                tail = DecayHint::power(a->tail_hint()->param + 1.0);
        }
        PosFunction fc = f;
        return AnalyticFunction(
            [fc, q](double t) { return integrate(fc, 0.0, t, q).value / t; }, 0.0,
            tail, Monotone::none, head);
    }
    case Kind::hardy_I: {
        StepFunction s = require_step();
        return AnalyticFunction([s](double t) { return hardy_I(s, t); }, 0.0,
                                DecayHint::power(0.0), Monotone::increasing);
    }
    case Kind::hardy_I2: {
        StepFunction s = require_step();
        return AnalyticFunction([s](double t) { return hardy_I2(s, t); }, 0.0,
                                DecayHint::power(1.0), Monotone::increasing);
    }
    case Kind::convolution: {
        if (!op.conv_kernel)
            throw std::invalid_argument("apply: convolution kernel missing");
        StepFunction s = require_step();
        auto conv = std::make_shared<Convolution>(s, *op.conv_kernel);
        double end = s.support_end() + op.conv_kernel->support_end();
        return AnalyticFunction([conv](double x) { return (*conv)(x); },
                                std::max(end, 1e-12));
    }
    case Kind::kernel: {
        if (!op.kernel)
            throw std::invalid_argument("apply: kernel missing");
        StepFunction s = require_step();
        if (const auto* g = std::get_if<Grid2DKernel>(&*op.kernel)) {
            // cellwise constant in x: the output is an exact step function
            const auto& xb = g->x_breakpoints();
            std::vector<double> v(g->nx());
            for (std::size_t i = 0; i < g->nx(); ++i)
                v[i] = apply_kernel(*g, s, 0.5 * (xb[i] + xb[i + 1])).value;
            return StepFunction(xb, std::move(v));
        }
        Kernel k = *op.kernel;
        return AnalyticFunction(
            [k, s, q](double x) { return apply_kernel(k, s, x, q).value; }, 0.0);
    }
    case Kind::associate: {
        if (!op.kernel)
            throw std::invalid_argument("apply: kernel missing");
        StepFunction s = require_step();
        if (const auto* g = std::get_if<Grid2DKernel>(&*op.kernel)) {
            const auto& yb = g->y_breakpoints();
            std::vector<double> v(g->ny());
            for (std::size_t j = 0; j < g->ny(); ++j)
                v[j] = associate_apply(*g, s, 0.5 * (yb[j] + yb[j + 1])).value;
            return StepFunction(yb, std::move(v));
        }
        const AnalyticKernel a = std::get<AnalyticKernel>(*op.kernel);
        return AnalyticFunction(
            [a, s, q](double y) { return associate_apply(a, s, y, q).value; }, 0.0);
    }
    case Kind::s_transform: {
        if (!op.kernel)
            throw std::invalid_argument("apply: kernel missing");
        const auto* g = std::get_if<Grid2DKernel>(&*op.kernel);
        if (!g)
            throw std::invalid_argument("apply: s_transform needs a grid kernel");
        StepFunction s = require_step();
        Grid2DKernel gk = *g;
        return AnalyticFunction(
            [gk, s](double x) { return s_transform(gk, s, x).value; }, 0.0,
            DecayHint::power(0.0), Monotone::increasing);
    }
    case Kind::h1: {
        if (!op.hardy)
            throw std::invalid_argument("apply: hardy kernels missing");
        StepFunction s = require_step();
        auto hk = op.hardy;
        return AnalyticFunction([hk, s](double x) { return hk->H1(s, x).value; },
                                0.0, DecayHint::power(0.0));
    }
    case Kind::h2: {
        if (!op.hardy)
            throw std::invalid_argument("apply: hardy kernels missing");
        StepFunction s = require_step();
        auto hk = op.hardy;
        return AnalyticFunction([hk, s](double y) { return hk->H2(s, y).value; },
                                0.0, DecayHint::power(0.0));
    }
    }
    throw std::logic_error("apply: unknown operator kind");
}

BestConstant estimate_best_constant(const OperatorSpec& op, const NormSpec& rho1,
                                    const NormSpec& rho2,
                                    const std::vector<PosFunction>& family,
                                    const GaugeNormOptions& opt) {
    BestConstant r;
    for (std::size_t i = 0; i < family.size(); ++i) {
        double n2 = gauge_norm(family[i], rho2.phi, rho2.u, opt);
        if (!(n2 > 0.0) || !std::isfinite(n2)) {
            r.notes.push_back("input " + std::to_string(i) +
                              " skipped: denominator norm is 0 or infinite");
            continue;
        }
        PosFunction Tf = apply(op, family[i], opt.quad);
        double n1 = gauge_norm(Tf, rho1.phi, rho1.u, opt);
        if (!std::isfinite(n1)) {
            r.notes.push_back("input " + std::to_string(i) +
                              " skipped: numerator norm is infinite");
            continue;
        }
        double ratio = n1 / n2;
        r.ratios.push_back(ratio);
        r.estimate = std::max(r.estimate, ratio);
    }
    if (r.ratios.empty())
        throw std::runtime_error("estimate_best_constant: empty effective family");
    return r;
}

namespace {

GenParams gen_params(const nlohmann::json& inputs) {
    GenParams p;
    if (inputs.is_object()) {
        p.max_slabs = inputs.value("max_slabs", p.max_slabs);
        p.max_slab_len = inputs.value("max_slab_len", p.max_slab_len);
        p.max_value = inputs.value("max_value", p.max_value);
        p.grid_cells = inputs.value("grid_cells", p.grid_cells);
    }
    return p;
}

void push_row(SuiteResult& res, int trial, double probe, double lhs, double rhs,
              double tol) {
    TrialRow row;
    row.trial = trial;
    row.probe = probe;
    row.lhs = lhs;
    row.rhs = rhs;
    row.slack = (rhs - lhs) / fmt_scale(lhs, rhs);
    row.verdict = row.slack >= -tol ? "pass" : "fail";
    res.worst_slack = std::min(res.worst_slack, row.slack);
    res.rows.push_back(row);
}

SuiteResult suite_oneil2(const Scenario& sc) {
    SuiteResult res;
    res.suite = sc.suite;
    res.trials = sc.trials;
    res.worst_slack = kInf;
    GenParams p = gen_params(sc.inputs);
    const double tol = 1e-9;
    for (int t = 0; t < sc.trials; ++t) {
        StepFunction f = generate_step(trial_seed(sc.seed, 2 * t), p);
        StepFunction g = generate_step(trial_seed(sc.seed, 2 * t + 1), p);
        double T = f.support_end() + g.support_end();
        Convolution conv(f, g);
        for (int i = 0; i < sc.probes; ++i) {
            double probe = T * double(i + 1) / double(sc.probes);
            double lhs = conv.exact().rearranged_head_integral(probe);
            double rhs = oneil_majorant(f, g, probe).rhs2;
            push_row(res, t, probe, lhs, rhs, tol);
        }
    }
    res.pass = res.worst_slack >= -tol;
    return res;
}

SuiteResult suite_hlp_chain(const Scenario& sc) {
    SuiteResult res;
    res.suite = sc.suite;
    res.trials = sc.trials;
    res.worst_slack = kInf;
    GenParams p = gen_params(sc.inputs);
    const double tol = 1e-9;
    for (int t = 0; t < sc.trials; ++t) {
        StepFunction fs =
            decreasing_rearrangement(generate_step(trial_seed(sc.seed, 2 * t), p)).star;
        StepFunction gs =
            decreasing_rearrangement(generate_step(trial_seed(sc.seed, 2 * t + 1), p))
                .star;
        StepFunction prod = pointwise_product(fs, gs);
        double total = prod.integral();
        double T = std::max(fs.support_end(), gs.support_end());
        if (T == 0.0)
            T = 1.0;
        for (int i = 0; i < sc.probes; ++i) {
            double tt = T * double(i + 1) / double(sc.probes);
            // A <= B <= C, all in exact slab arithmetic
            double A = tt * total - hardy_I2(prod, tt);
            double F = hardy_I(fs, tt), G = hardy_I(gs, tt);
            double tail = tt * (total - hardy_I(prod, tt));
            KahanSum sfg; // integral_0^t f*(s) G(s) ds
            const auto& bp = fs.breakpoints();
            const auto& v = fs.values();
            for (std::size_t k = 0; k < v.size(); ++k) {
                double a = bp[k], b = std::min(bp[k + 1], tt);
                if (b <= a || v[k] == 0.0)
                    continue;
                sfg.add(v[k] * (hardy_I2(gs, b) - hardy_I2(gs, a)));
            }
            double B = G * F - sfg.value() + tail;
            double C = F * G + tail;
            double s1 = (B - A) / fmt_scale(A, B);
            double s2 = (C - B) / fmt_scale(B, C);
            TrialRow row;
            row.trial = t;
            row.probe = tt;
            row.lhs = A;
            row.rhs = C;
            row.slack = std::min(s1, s2);
            row.verdict = row.slack >= -tol ? "pass" : "fail";
            res.worst_slack = std::min(res.worst_slack, row.slack);
            res.rows.push_back(row);
        }
    }
    res.pass = res.worst_slack >= -tol;
    return res;
}

SuiteResult suite_majorization16(const Scenario& sc) {
    SuiteResult res;
    res.suite = sc.suite;
    res.trials = sc.trials;
    res.worst_slack = kInf;
    GenParams p = gen_params(sc.inputs);
    const double tol = 1e-9;
    for (int t = 0; t < sc.trials; ++t) {
        Grid2DKernel K = generate_grid_kernel(trial_seed(sc.seed, 2 * t), p);
        StepFunction f = generate_step(trial_seed(sc.seed, 2 * t + 1), p);
        // T_K f is cellwise constant in x
        const auto& xb = K.x_breakpoints();
        std::vector<double> tv(K.nx());
        for (std::size_t i = 0; i < K.nx(); ++i)
            tv[i] = apply_kernel(K, f, 0.5 * (xb[i] + xb[i + 1])).value;
        StepFunction tkf_star =
            decreasing_rearrangement(StepFunction(xb, std::move(tv))).star;

        SectionedKernel L = iterated_rearrangement_sections(K);
        StepFunction fs = decreasing_rearrangement(f).star;
        std::vector<double> w(L.columns.size());
        for (std::size_t j = 0; j < L.columns.size(); ++j)
            w[j] = fs.integral(L.y_breakpoints[j], L.y_breakpoints[j + 1]);
        // T_L f* = sum_j w_j L_j is nonincreasing, so its running average needs
        // only the head integrals of the columns (never the union grid, which
        // can have nx * ny cells).
        auto tlf_head = [&](double tt) {
            KahanSum s;
            for (std::size_t j = 0; j < L.columns.size(); ++j)
                if (w[j] > 0.0)
                    s.add(w[j] * L.columns[j].integral(0.0, tt));
            return s.value();
        };
        double tl_end = 0.0;
        for (std::size_t j = 0; j < L.columns.size(); ++j)
            if (w[j] > 0.0 && !L.columns[j].is_zero())
                tl_end = std::max(tl_end, L.columns[j].support_end());
        double T = std::max({tkf_star.support_end(), tl_end, 1e-6});
        for (int i = 0; i < sc.probes; ++i) {
            double tt = T * double(i + 1) / double(sc.probes);
            double lhs = tkf_star.integral(0.0, tt) / tt;
            double rhs = tlf_head(tt) / tt;
            push_row(res, t, tt, lhs, rhs, tol);
        }
    }
    res.pass = res.worst_slack >= -tol;
    return res;
}

AnalyticFunction profile_from_inputs(const nlohmann::json& inputs) {
    if (inputs.is_object() && inputs.contains("profile"))
        return analytic_from_json(inputs.at("profile"));
    return AnalyticFunction::exp_decay(1.0);
}

SuiteResult suite_oneil_kernel_bound(const Scenario& sc) {
    SuiteResult res;
    res.suite = sc.suite;
    res.trials = sc.trials;
    res.worst_slack = kInf;
    GenParams p = gen_params(sc.inputs);
    AnalyticFunction k = profile_from_inputs(sc.inputs);
    QuadratureSpec q;
    const double tol = 1e-6;
    double worst_info = kInf;
    std::vector<double> xs = log_grid(0.1, 10.0, std::max(sc.probes, 2));
    for (int t = 0; t < sc.trials; ++t) {
        StepFunction fs = generate_decreasing_step(trial_seed(sc.seed, t), p);
        if (fs.is_zero())
            continue;
        auto tkf = [&](double y) {
            KahanSum s;
            const auto& bp = fs.breakpoints();
            const auto& v = fs.values();
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i] == 0.0)
                    continue;
                AnalyticFunction row(
                    [&k, y](double z) { return k(std::hypot(y, z)); }, bp[i + 1]);
                s.add(v[i] * integrate(row, bp[i], bp[i + 1], q).value);
            }
            return s.value();
        };
        auto rhs_with = [&](double x, double scale_inside) {
            KahanSum s;
            const auto& bp = fs.breakpoints();
            const auto& v = fs.values();
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i] == 0.0)
                    continue;
                AnalyticFunction row(
                    [&k, x, scale_inside](double y) {
                        return k(scale_inside * std::sqrt(x * y));
                    },
                    bp[i + 1]);
                s.add(v[i] * integrate(row, bp[i], bp[i + 1], q).value);
            }
            return s.value();
        };
        for (double x : xs) {
            AnalyticFunction inner(tkf, 0.0);
            double lhs = integrate(inner, 0.0, x, q).value / x;
            double rhs = rhs_with(x, 1.0); // K*(t) = k(sqrt(t))
            push_row(res, t, x, lhs, rhs, tol);
            // planar-measure variant K*(t) = k(2 sqrt(t / pi)), informational
            double rhs_mc = rhs_with(x, 2.0 / std::sqrt(M_PI));
            worst_info =
                std::min(worst_info, (rhs_mc - lhs) / fmt_scale(lhs, rhs_mc));
        }
    }
    res.notes.push_back("planar-measure variant worst slack: " +
                        std::to_string(worst_info));
    res.pass = res.worst_slack >= -tol;
    return res;
}

SuiteResult suite_sandwich(const Scenario& sc) {
    SuiteResult res;
    res.suite = sc.suite;
    res.trials = sc.trials;
    res.worst_slack = kInf;
    const double tol = 1e-9;
    const double c = std::pow(2.0, 0.75);
    for (int t = 0; t < sc.trials; ++t) {
        std::mt19937_64 rng(trial_seed(sc.seed, t));
        std::uniform_real_distribution<double> coord(1e-12, 10.0);
        double worst = kInf, worst_x = 0.0, wl = 0.0, wr = 0.0;
        for (int i = 0; i < sc.probes; ++i) {
            double x = coord(rng), y = coord(rng);
            double K = std::pow(x * x + y * y, -0.75);
            double mid = std::pow(x + y, -1.5);
            double s1 = (c * mid - K) / fmt_scale(K, c * mid);
            double s2 = (K - mid / c) / fmt_scale(mid / c, K);
            double s = std::min(s1, s2);
            if (s < worst) {
                worst = s;
                worst_x = x;
                wl = K;
                wr = c * mid;
            }
        }
        // equality case of the upper bound on the diagonal
        double d = coord(rng);
        double Kd = std::pow(2.0 * d * d, -0.75);
        double upd = c * std::pow(2.0 * d, -1.5);
        double eq = std::abs(Kd - upd) / upd;
        if (eq > 1e-12)
            worst = std::min(worst, -1.0);
        TrialRow row;
        row.trial = t;
        row.probe = worst_x;
        row.lhs = wl;
        row.rhs = wr;
        row.slack = worst;
        row.verdict = worst >= -tol ? "pass" : "fail";
        res.worst_slack = std::min(res.worst_slack, worst);
        res.rows.push_back(row);
    }
    res.pass = res.worst_slack >= -tol;
    return res;
}

SuiteResult suite_tighter_bound(const Scenario& sc) {
    SuiteResult res;
    res.suite = sc.suite;
    res.trials = sc.trials;
    res.worst_slack = kInf;
    GenParams p = gen_params(sc.inputs);
    const double tol = 1e-9;
    for (int t = 0; t < sc.trials; ++t) {
        StepFunction k = generate_decreasing_kernel_profile(trial_seed(sc.seed, t), p);
        std::mt19937_64 rng(trial_seed(sc.seed ^ 0x5bf0a8b1ULL, t));
        std::uniform_real_distribution<double> coord(1e-9, 10.0);
        double worst = kInf, worst_x = 0.0, wl = 0.0, wr = 0.0;
        for (int i = 0; i < sc.probes; ++i) {
            double x = coord(rng), y = coord(rng);
            double lhs = k(std::hypot(x, y));
            double rhs = k(std::sqrt(x * y));
            double s = (rhs - lhs) / fmt_scale(lhs, rhs);
            if (s < worst) {
                worst = s;
                worst_x = x;
                wl = lhs;
                wr = rhs;
            }
        }
        TrialRow row;
        row.trial = t;
        row.probe = worst_x;
        row.lhs = wl;
        row.rhs = wr;
        row.slack = worst;
        row.verdict = worst >= -tol ? "pass" : "fail";
        res.worst_slack = std::min(res.worst_slack, worst);
        res.rows.push_back(row);
    }
    res.pass = res.worst_slack >= -tol;
    return res;
}

SuiteResult suite_growth_theorem11(const Scenario& sc) {
    SuiteResult res;
    res.suite = sc.suite;
    res.trials = sc.trials;
    res.worst_slack = kInf;
    GenParams p = gen_params(sc.inputs);
    const double tol = 1e-12;
    for (int t = 0; t < sc.trials; ++t) {
        StepFunction k = generate_decreasing_kernel_profile(trial_seed(sc.seed, t), p);
        std::mt19937_64 rng(trial_seed(sc.seed ^ 0x2545F491ULL, t));
        double span = std::max(k.support_end() * 1.5, 1.0);
        std::uniform_real_distribution<double> coord(1e-9, span);
        double worst = kInf, worst_x = 0.0, wl = 0.0, wr = 0.0;
        for (int i = 0; i < sc.probes; ++i) {
            double a = coord(rng), b = coord(rng), cc = coord(rng);
            double y = std::min({a, b, cc});
            double x = std::max({a, b, cc});
            double z = a + b + cc - y - x;
            if (!(y < z && z < x))
                continue; // degenerate draw
            double lhs = k(x + y);
            double rhs = k(x + z) + k(z + y);
            double s = (rhs - lhs) / fmt_scale(lhs, rhs);
            if (s < worst) {
                worst = s;
                worst_x = x;
                wl = lhs;
                wr = rhs;
            }
        }
        TrialRow row;
        row.trial = t;
        row.probe = worst_x;
        row.lhs = wl;
        row.rhs = wr;
        row.slack = worst;
        row.verdict = worst >= -tol ? "pass" : "fail";
        res.worst_slack = std::min(res.worst_slack, worst);
        res.rows.push_back(row);
    }
    res.pass = res.worst_slack >= -tol;
    return res;
}

SuiteResult suite_kantorovich(const Scenario& sc) {
    SuiteResult res;
    res.suite = sc.suite;
    res.trials = 1;
    PowerParams params;
    params.p = sc.inputs.value("p", 2.0);
    params.q = sc.inputs.value("q", 2.0);
    double expo = sc.inputs.value("exponent", -0.75);
    std::vector<double> eps;
    for (int k = 3; k <= 10; ++k)
        eps.push_back(std::ldexp(1.0, -k));
    ConditionReport rep = kantorovich_probe(AnalyticKernel::pythagorean_power(expo),
                                            params, eps);
    for (std::size_t i = 0; i < rep.refinement_history.size(); ++i) {
        TrialRow row;
        row.trial = 0;
        row.probe = eps[i];
        row.lhs = rep.refinement_history[i];
        row.rhs = i > 0 ? rep.refinement_history[i] / rep.refinement_history[i - 1]
                        : 1.0;
        row.slack = 0.0;
        row.verdict = to_string(rep.verdict);
        res.rows.push_back(row);
    }
    res.notes = rep.notes;
    res.notes.push_back("inner norm log-log slope: " +
                        std::to_string(rep.metrics.count("inner_norm_log_slope")
                                           ? rep.metrics.at("inner_norm_log_slope")
                                           : 0.0));
    res.worst_slack = 0.0;
    bool divergent = rep.verdict == Verdict::divergent_term;
    res.pass = sc.expect == "divergent" ? divergent : !divergent;
    return res;
}

SuiteResult suite_hls_v_prime(const Scenario& sc) {
    SuiteResult res;
    res.suite = sc.suite;
    res.trials = 1;
    PowerParams params;
    params.p = sc.inputs.value("p", 4.0 / 3.0);
    params.q = sc.inputs.value("q", 4.0);
    double expo = sc.inputs.value("exponent", -0.5);
    double expected = sc.inputs.value("expected_sup", 16.0 / 15.0);
    std::vector<double> xs = log_grid(1e-2, 1e2, 25);
    auto reports = check_power_conditions(AnalyticFunction::power(expo), params, xs);
    const ConditionReport* binding = nullptr;
    for (const auto& r : reports)
        if (r.condition_id == "power.v_prime.a")
            binding = &r;
    if (!binding)
        throw std::logic_error("hls_v_prime: missing v_prime report");
    for (const auto& pt : binding->points) {
        TrialRow row;
        row.trial = 0;
        row.probe = pt.x;
        row.lhs = pt.required_constant;
        row.rhs = expected;
        row.slack = (expected - pt.required_constant) / expected;
        row.verdict = to_string(binding->verdict);
        res.rows.push_back(row);
    }
    double sup = binding->best_constant_estimate;
    res.worst_slack = -std::abs(sup - expected) / expected;
    res.pass = binding->verdict == Verdict::holds_estimated &&
               std::abs(sup - expected) <= 1e-3 * expected;
    res.notes.push_back("sup ratio: " + std::to_string(sup));
    for (const auto& r : reports)
        if (r.condition_id == "power.v_prime.b")
            res.notes.push_back("companion inequality verdict: " +
                                std::string(to_string(r.verdict)));
    return res;
}

} // namespace

SuiteResult verify_inequality_suite(const Scenario& scenario) {
    Scenario sc = scenario;
    if (!sc.inputs.is_object())
        sc.inputs = nlohmann::json::object();
    SuiteResult r;
    if (sc.suite == "oneil2")
        r = suite_oneil2(sc);
    else if (sc.suite == "hlp_chain")
        r = suite_hlp_chain(sc);
    else if (sc.suite == "majorization16")
        r = suite_majorization16(sc);
    else if (sc.suite == "oneil_kernel_bound")
        r = suite_oneil_kernel_bound(sc);
    else if (sc.suite == "sandwich")
        r = suite_sandwich(sc);
    else if (sc.suite == "tighter_bound")
        r = suite_tighter_bound(sc);
    else if (sc.suite == "growth_theorem11")
        r = suite_growth_theorem11(sc);
    else if (sc.suite == "kantorovich")
        r = suite_kantorovich(sc);
    else if (sc.suite == "hls_v_prime")
        r = suite_hls_v_prime(sc);
    else
        throw std::invalid_argument("verify_inequality_suite: unknown suite '" +
                                    sc.suite + "'");
    if (!std::isfinite(r.worst_slack))
        r.worst_slack = 0.0;
    return r;
}

std::string suite_csv(const std::string& scenario_name, const SuiteResult& r) {
    std::string out = "scenario,trial,probe,lhs,rhs,slack,verdict\n";
    char buf[256];
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%.17g,%.17g,%.17g,%.17g,%s\n",
                      scenario_name.c_str(), row.trial, row.probe, row.lhs,
                      row.rhs, row.slack, row.verdict.c_str());
        out += buf;
    }
    return out;
}

nlohmann::json suite_json(const SuiteResult& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"trial", row.trial},
                        {"probe", row.probe},
                        {"lhs", row.lhs},
                        {"rhs", row.rhs},
                        {"slack", row.slack},
                        {"verdict", row.verdict}});
    return {{"suite", r.suite},
            {"trials", r.trials},
            {"worst_slack", r.worst_slack},
            {"pass", r.pass},
            {"notes", r.notes},
            {"rows", rows}};
}

RunOutcome run_scenarios(const nlohmann::json& config,
                         const std::filesystem::path& out_dir) {
    if (!config.is_object() || !config.contains("scenarios") ||
        !config.at("scenarios").is_array())
        throw std::invalid_argument("config must be {\"scenarios\": [...]}");
    // validate everything before writing any report file
    std::vector<Scenario> scenarios;
    for (const auto& j : config.at("scenarios")) {
        Scenario sc;
        sc.name = j.at("name").get<std::string>();
        sc.suite = j.at("suite").get<std::string>();
        sc.seed = j.value("seed", 1ULL);
        sc.trials = j.value("trials", 20);
        sc.probes = j.value("probes", 20);
        sc.expect = j.value("expect", "pass");
        sc.inputs = j.value("inputs", nlohmann::json::object());
        scenarios.push_back(std::move(sc));
    }
    std::filesystem::create_directories(out_dir);
    RunOutcome out;
    for (const auto& sc : scenarios) {
        SuiteResult r = verify_inequality_suite(sc);
        {
            std::ofstream csv(out_dir / (sc.name + ".csv"));
            csv << suite_csv(sc.name, r);
        }
        {
            std::ofstream js(out_dir / (sc.name + ".json"));
            js << suite_json(r).dump(2) << "\n";
        }
        if (!r.pass)
            out.exit_code = 1;
        out.results.push_back(std::move(r));
    }
    return out;
}

RunOutcome run_scenario_file(const std::filesystem::path& config_path,
                             const std::filesystem::path& out_dir) {
    std::ifstream in(config_path);
    if (!in)
        throw std::runtime_error("cannot open config: " + config_path.string());
    nlohmann::json config = nlohmann::json::parse(in);
    return run_scenarios(config, out_dir);
}

} // namespace olg
