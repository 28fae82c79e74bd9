#include "olg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "olg/common.hpp"

namespace olg {

namespace {

struct Panel {
    double value = 0.0;
    double error = 0.0;
    bool ok = true;
};

double simpson(double fa, double fm, double fb, double h) {
    return (fa + 4.0 * fm + fb) * h / 6.0;
}

void asr(const std::function<double(double)>& f, double a, double fa, double b,
         double fb, double m, double fm, double whole, double tol, int depth,
         int& budget, Panel& out) {
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
        out.ok = false;
        return;
    }
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm)) {
        out.ok = false;
        return;
    }
    double left = simpson(fa, flm, fm, m - a);
    double right = simpson(fm, frm, fb, b - m);
    double delta = left + right - whole;
    if (depth <= 0 || budget <= 0 || std::abs(delta) <= 15.0 * tol) {
        out.value += left + right + delta / 15.0;
        out.error += std::abs(delta) / 15.0;
        return;
    }
    budget -= 1;
    asr(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, budget, out);
    if (!out.ok)
        return;
    asr(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, budget, out);
}

Panel adaptive(const std::function<double(double)>& f, double a, double b,
               double tol, int& budget) {
    Panel out;
    if (a >= b)
        return out;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = simpson(fa, fm, fb, b - a);
    asr(f, a, fa, b, fb, m, fm, whole, tol, 48, budget, out);
    return out;
}

// Geometric-series sum of dyadic pieces toward an accumulation point
// (0+ for heads, +inf for tails).  `piece(k)` integrates the k-th piece,
// `remainder(k)` gives a closed-form tail estimate from a decay hint, or NaN
// when no hint applies; without a hint the piece ratio is extrapolated.
struct DyadicOpts {
    double abs_tol, rel_tol;
    int max_pieces = 700;
};

Integral dyadic_sum(const std::function<Panel(int)>& piece,
                    const std::function<double(int)>& remainder,
                    const DyadicOpts& o) {
    Integral res;
    KahanSum accum;
    double err = 0.0;
    double prev_total = kInf;
    int stable = 0, flat = 0;
    double p1 = 0.0, p2 = 0.0; // previous two piece values
    for (int k = 0; k < o.max_pieces; ++k) {
        Panel p = piece(k);
        if (!p.ok) {
            res.status = IntegralStatus::failed;
            res.value = accum.value();
            res.error = err;
            return res;
        }
        accum.add(p.value);
        err += p.error;
        double tiny = std::max(o.abs_tol, o.rel_tol * std::abs(accum.value()));

        double rem = remainder(k);
        bool have_est = false;
        double est = 0.0;
        if (std::isfinite(rem)) {
            est = rem;
            have_est = true;
        } else if (rem == kInf) {
            res.status = IntegralStatus::divergent;
            res.value = accum.value();
            res.error = err;
            return res;
        } else if (std::abs(p.value) <= tiny) {
            est = 0.0;
            have_est = true;
        } else if (k >= 2 && p2 > 0.0 && p1 > 0.0) {
            double r1 = p.value / p1, r0 = p1 / p2;
            if (r1 > 0.0 && r1 < 0.995 && std::abs(r1 - r0) < 0.08 * std::max(1.0, r1)) {
                est = p.value * r1 / (1.0 - r1);
                have_est = true;
            } else if (r1 >= 0.995) {
                if (++flat >= 8) { // pieces not decaying: divergent
                    res.status = IntegralStatus::divergent;
                    res.value = accum.value();
                    res.error = err;
                    return res;
                }
            }
        }
        p2 = p1;
        p1 = p.value;

        if (have_est) {
            double total = accum.value() + est;
            if (std::abs(total - prev_total) <=
                std::max(o.abs_tol, o.rel_tol * std::abs(total))) {
                if (++stable >= 2) {
                    res.value = total;
                    res.error = err + std::abs(est) * 1e-2;
                    return res;
                }
            } else {
                stable = 0;
            }
            prev_total = total;
        }
    }
    res.status = IntegralStatus::failed;
    res.value = accum.value() + (std::isfinite(prev_total) ? prev_total - accum.value() : 0.0);
    res.error = err;
    return res;
}

} // namespace

Integral integrate(const StepFunction& f, double a, double b, const QuadratureSpec&) {
    if (a > b)
        throw std::invalid_argument("integrate: a > b");
    Integral r;
    r.value = f.integral(a, b);
    return r;
}

Integral integrate(const AnalyticFunction& f, double a, double b,
                   const QuadratureSpec& q) {
    if (a > b)
        throw std::invalid_argument("integrate: a > b");
    if (a < 0.0)
        throw std::invalid_argument("integrate: negative lower limit");
    b = std::min(b, f.domain_end());
    if (a >= b)
        return {};

    // Never sample at exactly 0: evaluators like (1/t) int_0^t are 0/0 there.
    double eps0 = b * 1e-13;
    auto ev = [&f, eps0](double t) { return f(t <= 0.0 ? eps0 : t); };
    int budget = q.max_subdivisions;

    bool head_singular = false;
    double sigma = f.head_power() ? *f.head_power() : 0.0;
    if (a == 0.0) {
        if (f.head_power() && *f.head_power() < 0.0)
            head_singular = true;
        else if (!std::isfinite(f(b * 1e-12)))
            head_singular = true;
    }

    if (!head_singular) {
        Panel p = adaptive(ev, a, b, std::max(q.abs_tol, q.rel_tol), budget);
        Integral r;
        if (!p.ok) {
            r.status = IntegralStatus::failed;
            return r;
        }
        r.value = p.value;
        r.error = p.error;
        return r;
    }

    bool have_sigma = f.head_power().has_value();
    if (have_sigma && sigma <= -1.0 && f(b * 0.5) > 0.0) {
        Integral r;
        r.status = IntegralStatus::divergent;
        return r;
    }
    double tol = std::max(q.abs_tol, q.rel_tol) * 0.25;
    auto piece = [&](int k) {
        double hi = b * std::ldexp(1.0, -k);
        double lo = 0.5 * hi;
        return adaptive(ev, lo, hi, tol * std::ldexp(1.0, -k / 2), budget);
    };
    auto remainder = [&](int k) -> double {
        if (!have_sigma)
            return std::nan("");
        double lo = b * std::ldexp(1.0, -(k + 1));
        double fl = f(lo);
        if (!std::isfinite(fl))
            return std::nan("");
        if (sigma <= -1.0)
            return fl * lo > 0.0 ? kInf : 0.0;
        return fl * lo / (sigma + 1.0);
    };
    return dyadic_sum(piece, remainder, {q.abs_tol, q.rel_tol});
}

Integral integrate(const PosFunction& f, double a, double b, const QuadratureSpec& q) {
    return std::visit([&](const auto& g) { return integrate(g, a, b, q); }, f);
}

Integral integrate_tail(const StepFunction& f, double a, const QuadratureSpec&) {
    if (a < 0.0)
        throw std::invalid_argument("integrate_tail: negative lower limit");
    Integral r;
    r.value = f.integral(a, f.support_end());
    return r;
}

Integral integrate_tail(const AnalyticFunction& f, double a, const QuadratureSpec& q) {
    if (a < 0.0)
        throw std::invalid_argument("integrate_tail: negative lower limit");
    if (f.bounded_domain())
        return integrate(f, a, f.domain_end(), q);

    double start = std::max(a, 1.0);
    Integral headpart;
    if (start > a) {
        headpart = integrate(f, a, start, q);
        if (!headpart.converged())
            return headpart;
    }

    auto ev = [&f](double t) { return f(t); };
    int budget = q.max_subdivisions;
    double tol = std::max(q.abs_tol, q.rel_tol) * 0.25;
    auto piece = [&](int k) {
        double lo = start * std::ldexp(1.0, k);
        return adaptive(ev, lo, 2.0 * lo, tol, budget);
    };
    const auto& hint = f.tail_hint();
    auto remainder = [&](int k) -> double {
        if (!hint)
            return std::nan("");
        double R = start * std::ldexp(1.0, k + 1);
        double fR = f(R);
        if (!std::isfinite(fR))
            return std::nan("");
        if (hint->kind == DecayHint::Kind::exponential)
            return fR / hint->param;
        if (hint->param >= -1.0)
            return fR > 0.0 ? kInf : 0.0;
        return fR * R / (-hint->param - 1.0);
    };
    Integral tail = dyadic_sum(piece, remainder, {q.abs_tol, q.rel_tol});
    tail.value += headpart.value;
    tail.error += headpart.error;
    return tail;
}

Integral integrate_tail(const PosFunction& f, double a, const QuadratureSpec& q) {
    return std::visit([&](const auto& g) { return integrate_tail(g, a, q); }, f);
}

StepFunction discretize(const AnalyticFunction& f, const std::vector<double>& grid,
                        const QuadratureSpec& q) {
    if (grid.size() < 2 || grid.front() != 0.0)
        throw std::invalid_argument("discretize: grid must increase strictly from 0");
    std::vector<double> v(grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (grid[i + 1] <= grid[i])
            throw std::invalid_argument("discretize: grid must increase strictly from 0");
        Integral cell = integrate(f, grid[i], grid[i + 1], q);
        if (!cell.converged())
            throw std::runtime_error("discretize: evaluator failure in cell " +
                                     std::to_string(i) + " [" + std::to_string(grid[i]) +
                                     ", " + std::to_string(grid[i + 1]) + ")");
        v[i] = cell.value / (grid[i + 1] - grid[i]);
    }
    return StepFunction(grid, std::move(v));
}

} // namespace olg
