#include "olg/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "olg/common.hpp"

namespace olg {

double hardy_I(const StepFunction& f, double t) {
    if (t < 0.0)
        throw std::invalid_argument("hardy_I: t must be >= 0");
    return f.integral(0.0, t);
}

double hardy_I2(const StepFunction& f, double t) {
    if (t < 0.0)
        throw std::invalid_argument("hardy_I2: t must be >= 0");
    const auto& bp = f.breakpoints();
    const auto& v = f.values();
    KahanSum s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double a = bp[i], b = std::min(bp[i + 1], t);
        if (b <= a || v[i] == 0.0)
            continue;
        // integral_a^b (t - s) ds
        s.add(v[i] * 0.5 * ((t - a) * (t - a) - (t - b) * (t - b)));
    }
    return s.value();
}

namespace {

double overlap(double a1, double b1, double a2, double b2) {
    return std::max(0.0, std::min(b1, b2) - std::max(a1, a2));
}

double conv_eval(const StepFunction& f, const StepFunction& g, double x) {
    const auto& fb = f.breakpoints();
    const auto& fv = f.values();
    const auto& gb = g.breakpoints();
    const auto& gv = g.values();
    KahanSum s;
    for (std::size_t i = 0; i < fv.size(); ++i) {
        if (fv[i] == 0.0)
            continue;
        for (std::size_t j = 0; j < gv.size(); ++j) {
            if (gv[j] == 0.0)
                continue;
            s.add(fv[i] * gv[j] * overlap(x - fb[i + 1], x - fb[i], gb[j], gb[j + 1]));
        }
    }
    return s.value();
}

PiecewiseLinear conv_nodes(const StepFunction& f, const StepFunction& g) {
    if (f.is_zero() || g.is_zero())
        return PiecewiseLinear({0.0, 1.0}, {0.0, 0.0});
    std::vector<double> xs;
    xs.reserve(f.breakpoints().size() * g.breakpoints().size());
    for (double a : f.breakpoints())
        for (double b : g.breakpoints())
            xs.push_back(a + b);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        ys[i] = conv_eval(f, g, xs[i]);
    return PiecewiseLinear(std::move(xs), std::move(ys));
}

} // namespace

Convolution::Convolution(StepFunction f, StepFunction g)
    : f_(std::move(f)), g_(std::move(g)), pl_(conv_nodes(f_, g_)) {}

double Convolution::operator()(double x) const { return conv_eval(f_, g_, x); }

StepFunction Convolution::resampled(std::size_t resolution) const {
    if (resolution == 0)
        throw std::invalid_argument("Convolution::resampled: resolution must be > 0");
    double end = f_.support_end() + g_.support_end();
    if (end == 0.0)
        return StepFunction();
    return pl_.resample(linspace(0.0, end, resolution + 1));
}

Convolution convolve(const StepFunction& f, const StepFunction& g) {
    return Convolution(f, g);
}

Integral apply_kernel(const Grid2DKernel& K, const StepFunction& f, double x) {
    if (!(x > 0.0))
        throw std::invalid_argument("apply_kernel: x must be > 0");
    Integral r;
    if (x >= K.x_breakpoints().back())
        return r;
    std::size_t i = static_cast<std::size_t>(
                        std::upper_bound(K.x_breakpoints().begin(), K.x_breakpoints().end(), x) -
                        K.x_breakpoints().begin()) - 1;
    KahanSum s;
    const auto& yb = K.y_breakpoints();
    for (std::size_t j = 0; j < K.ny(); ++j)
        if (K.cell(i, j) > 0.0)
            s.add(K.cell(i, j) * f.integral(yb[j], yb[j + 1]));
    r.value = s.value();
    return r;
}

Integral apply_kernel(const AnalyticKernel& K, const StepFunction& f, double x,
                      const QuadratureSpec& q) {
    if (!(x > 0.0))
        throw std::invalid_argument("apply_kernel: x must be > 0");
    const auto& bp = f.breakpoints();
    const auto& v = f.values();
    KahanSum s;
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0.0)
            continue;
        AnalyticFunction row([&K, x](double y) { return K(x, y); }, 0.0);
        Integral cell = integrate(row, bp[i], bp[i + 1], q);
        if (!cell.converged())
            return {s.value(), cell.status, err};
        s.add(v[i] * cell.value);
        err += v[i] * cell.error;
    }
    return {s.value(), IntegralStatus::converged, err};
}

Integral apply_kernel(const Kernel& K, const StepFunction& f, double x,
                      const QuadratureSpec& q) {
    if (const auto* g = std::get_if<Grid2DKernel>(&K))
        return apply_kernel(*g, f, x);
    return apply_kernel(std::get<AnalyticKernel>(K), f, x, q);
}

Integral associate_apply(const Grid2DKernel& K, const StepFunction& g, double y) {
    if (!(y > 0.0))
        throw std::invalid_argument("associate_apply: y must be > 0");
    Integral r;
    if (y >= K.y_breakpoints().back())
        return r;
    std::size_t j = static_cast<std::size_t>(
                        std::upper_bound(K.y_breakpoints().begin(), K.y_breakpoints().end(), y) -
                        K.y_breakpoints().begin()) - 1;
    KahanSum s;
    const auto& xb = K.x_breakpoints();
    for (std::size_t i = 0; i < K.nx(); ++i)
        if (K.cell(i, j) > 0.0)
            s.add(K.cell(i, j) * g.integral(xb[i], xb[i + 1]));
    r.value = s.value();
    return r;
}

Integral associate_apply(const AnalyticKernel& K, const StepFunction& g, double y,
                         const QuadratureSpec& q) {
    if (!(y > 0.0))
        throw std::invalid_argument("associate_apply: y must be > 0");
    AnalyticKernel swapped([&K](double a, double b) { return K(b, a); },
                           K.mono_y(), K.mono_x());
    return apply_kernel(swapped, g, y, q);
}

Integral s_transform(const Grid2DKernel& K, const StepFunction& g, double x) {
    if (!(x > 0.0))
        throw std::invalid_argument("s_transform: x must be > 0");
    const auto& yb = K.y_breakpoints();
    const auto& xb = K.x_breakpoints();
    KahanSum s;
    for (std::size_t j = 0; j < K.ny(); ++j) {
        double len = std::min(x, yb[j + 1]) - std::min(x, yb[j]);
        if (len <= 0.0)
            continue;
        KahanSum col;
        for (std::size_t i = 0; i < K.nx(); ++i)
            if (K.cell(i, j) > 0.0)
                col.add(K.cell(i, j) * g.integral(xb[i], xb[i + 1]));
        s.add(col.value() * len);
    }
    Integral r;
    r.value = s.value();
    return r;
}

double s_transform_averaging(const StepFunction& g, double x) {
    if (!(x > 0.0))
        throw std::invalid_argument("s_transform_averaging: x must be > 0");
    const auto& bp = g.breakpoints();
    const auto& v = g.values();
    KahanSum tail; // integral_x^inf g(y) dy / y
    for (std::size_t i = 0; i < v.size(); ++i) {
        double lo = std::max(bp[i], x), hi = bp[i + 1];
        if (hi > lo && v[i] > 0.0)
            tail.add(v[i] * std::log(hi / lo));
    }
    return g.integral(0.0, x) + x * tail.value();
}

HardyKernels::HardyKernels(Kernel L, QuadratureSpec q) : L_(std::move(L)), q_(q) {
    if (const auto* g = std::get_if<Grid2DKernel>(&L_)) {
        if (g->mono_x() != Monotone::decreasing || g->mono_y() != Monotone::decreasing)
            throw std::invalid_argument(
                "HardyKernels: L must be nonincreasing in both variables");
        grid_cum_.resize(g->nx());
        const auto& yb = g->y_breakpoints();
        for (std::size_t i = 0; i < g->nx(); ++i) {
            grid_cum_[i].resize(g->ny() + 1, 0.0);
            for (std::size_t j = 0; j < g->ny(); ++j)
                grid_cum_[i][j + 1] =
                    grid_cum_[i][j] + g->cell(i, j) * (yb[j + 1] - yb[j]);
        }
    } else {
        const auto& a = std::get<AnalyticKernel>(L_);
        if (a.mono_x() != Monotone::decreasing || a.mono_y() != Monotone::decreasing)
            throw std::invalid_argument(
                "HardyKernels: L must be nonincreasing in both variables");
    }
}

Integral HardyKernels::row_cumulative(double row, double upto) const {
    Integral r;
    if (const auto* g = std::get_if<Grid2DKernel>(&L_)) {
        const auto& xb = g->x_breakpoints();
        if (row < 0.0 || row >= xb.back())
            return r;
        std::size_t i = static_cast<std::size_t>(
                            std::upper_bound(xb.begin(), xb.end(), row) - xb.begin()) - 1;
        const auto& yb = g->y_breakpoints();
        if (upto >= yb.back()) {
            r.value = grid_cum_[i].back();
            return r;
        }
        std::size_t j = static_cast<std::size_t>(
                            std::upper_bound(yb.begin(), yb.end(), upto) - yb.begin()) - 1;
        r.value = grid_cum_[i][j] + g->cell(i, j) * (upto - yb[j]);
        return r;
    }
    const auto& a = std::get<AnalyticKernel>(L_);
    if (a.structure() == AnalyticKernel::Structure::sum_profile && a.profile()) {
        const AnalyticFunction& k = *a.profile();
        if (std::isfinite(upto))
            return integrate(k, row, row + upto, q_);
        return integrate_tail(k, row, q_);
    }
    std::optional<DecayHint> hint;
    if (a.structure() == AnalyticKernel::Structure::radial_profile && a.profile())
        hint = a.profile()->tail_hint();
    AnalyticFunction sec([&a, row](double z) { return a(row, z); }, 0.0, hint);
    if (std::isfinite(upto))
        return integrate(sec, 0.0, upto, q_);
    return integrate_tail(sec, 0.0, q_);
}

double HardyKernels::M1(double x, double y) const {
    return row_cumulative(y, x).value;
}

Integral HardyKernels::M2(double y, double x) const {
    return row_cumulative(1.0 / y, x > 0.0 ? 1.0 / x : kInf);
}

Integral HardyKernels::H1(const StepFunction& f, double x) const {
    Integral r;
    if (const auto* g = std::get_if<Grid2DKernel>(&L_)) {
        const auto& xb = g->x_breakpoints();
        KahanSum s;
        for (std::size_t i = 0; i < g->nx(); ++i) {
            double lo = xb[i], hi = std::min(xb[i + 1], x);
            if (hi <= lo)
                break;
            double m1 = M1(x, 0.5 * (lo + hi));
            s.add(m1 * f.integral(lo, hi));
        }
        r.value = s.value();
        return r;
    }
    const HardyKernels* self = this;
    AnalyticFunction integrand(
        [self, &f, x](double y) { return self->M1(x, y) * f(y); }, std::min(x, f.support_end()));
    return integrate(integrand, 0.0, std::min(x, f.support_end()), q_);
}

Integral HardyKernels::H2(const StepFunction& g, double y) const {
    if (const auto* gr = std::get_if<Grid2DKernel>(&L_)) {
        // M2(y, x) is constant in x between reciprocals of L's y-breakpoints.
        const auto& yb = gr->y_breakpoints();
        std::vector<double> pts{0.0, y};
        for (std::size_t j = 1; j < yb.size(); ++j)
            if (yb[j] > 0.0 && 1.0 / yb[j] < y)
                pts.push_back(1.0 / yb[j]);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        KahanSum s;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            double lo = pts[i], hi = pts[i + 1];
            double gm = g.integral(lo, hi);
            if (gm == 0.0)
                continue;
            Integral m2 = M2(y, 0.5 * (lo + hi));
            if (!m2.converged())
                return {s.value(), m2.status, 0.0};
            s.add(m2.value * gm);
        }
        Integral r;
        r.value = s.value();
        return r;
    }
    // As x -> 0 the inner limit 1/x -> inf; divergence there dominates.
    if (g(y * 1e-9) > 0.0) {
        Integral probe = M2(y, 0.0);
        if (probe.divergent())
            return {0.0, IntegralStatus::divergent, 0.0};
    }
    const HardyKernels* self = this;
    double end = std::min(y, g.support_end());
    AnalyticFunction integrand(
        [self, &g, y](double x) { return self->M2(y, x).value * g(x); }, end);
    return integrate(integrand, 0.0, end, q_);
}

HardyKernels build_hardy_kernels(const Kernel& L, const QuadratureSpec& q) {
    return HardyKernels(L, q);
}

OneilMajorant oneil_majorant(const StepFunction& f, const StepFunction& g, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("oneil_majorant: t must be > 0");
    StepFunction fs = decreasing_rearrangement(f).star;
    StepFunction gs = decreasing_rearrangement(g).star;
    StepFunction prod = pointwise_product(fs, gs);
    double If = fs.integral(0.0, t), Ig = gs.integral(0.0, t);
    double se = prod.support_end();
    double tail = t < se ? prod.integral(t, se) : 0.0;
    OneilMajorant r;
    r.rhs2 = If * Ig + t * tail;
    r.integrand3 = fs(t) * Ig + gs(t) * If + tail;
    return r;
}

} // namespace olg
