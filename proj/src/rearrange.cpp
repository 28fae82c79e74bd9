#include "olg/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "olg/common.hpp"

namespace olg {

double distribution(const StepFunction& f, double lambda) {
    if (lambda < 0.0)
        throw std::invalid_argument("distribution: lambda must be >= 0");
    KahanSum s;
    const auto& bp = f.breakpoints();
    const auto& v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > lambda)
            s.add(bp[i + 1] - bp[i]);
    return s.value();
}

RearrangementResult decreasing_rearrangement(const StepFunction& f) {
    const auto& bp = f.breakpoints();
    const auto& v = f.values();
    std::vector<std::pair<double, double>> slabs; // (value, length), positive values only
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > 0.0)
            slabs.emplace_back(v[i], bp[i + 1] - bp[i]);
    std::sort(slabs.begin(), slabs.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<double> nb{0.0}, nv;
    for (const auto& [val, len] : slabs) {
        if (!nv.empty() && nv.back() == val)
            nb.back() += len; // merge ties into one slab
        else {
            nv.push_back(val);
            nb.push_back(nb.back() + len);
        }
    }
    RearrangementResult r{StepFunction(std::move(nb), std::move(nv)), 0.0};
    r.total_measure = r.star.support_end();
    return r;
}

double double_star(const StepFunction& f, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("double_star: t must be > 0");
    return decreasing_rearrangement(f).star.integral(0.0, t) / t;
}

double radial_profile(const AnalyticFunction& k, int n, double t) {
    if (k.monotone() != Monotone::decreasing)
        throw std::invalid_argument("radial_profile: k must be flagged decreasing");
    if (n < 1)
        throw std::invalid_argument("radial_profile: n must be >= 1");
    if (!(t > 0.0))
        throw std::invalid_argument("radial_profile: t must be > 0");
    double c = std::pow(std::tgamma(0.5 * n + 1.0), 1.0 / n) / std::sqrt(M_PI);
    return k(c * std::pow(t, 1.0 / n));
}

double SectionedKernel::operator()(double t, double s) const {
    if (s < 0.0 || s >= y_breakpoints.back())
        return 0.0;
    std::size_t j = static_cast<std::size_t>(
                        std::upper_bound(y_breakpoints.begin(), y_breakpoints.end(), s) -
                        y_breakpoints.begin()) - 1;
    return columns[j](t);
}

namespace {

// Sort (value, length) pairs by value descending into a step function from 0.
StepFunction sorted_step(std::vector<std::pair<double, double>> slabs) {
    std::sort(slabs.begin(), slabs.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<double> nb{0.0}, nv;
    for (const auto& [val, len] : slabs) {
        if (val <= 0.0)
            break;
        if (!nv.empty() && nv.back() == val)
            nb.back() += len;
        else {
            nv.push_back(val);
            nb.push_back(nb.back() + len);
        }
    }
    return StepFunction(std::move(nb), std::move(nv));
}

} // namespace

SectionedKernel iterated_rearrangement_sections(const Grid2DKernel& K) {
    const std::size_t nx = K.nx(), ny = K.ny();
    const auto& xb = K.x_breakpoints();
    const auto& yb = K.y_breakpoints();

    // Stage 1: rearrange each x-row in y.
    std::vector<StepFunction> rows(nx);
    std::vector<double> sb{0.0};
    for (std::size_t i = 0; i < nx; ++i) {
        std::vector<std::pair<double, double>> slabs(ny);
        for (std::size_t j = 0; j < ny; ++j)
            slabs[j] = {K.cell(i, j), yb[j + 1] - yb[j]};
        rows[i] = sorted_step(std::move(slabs));
        for (double b : rows[i].breakpoints())
            if (b > 0.0)
                sb.push_back(b);
    }
    std::sort(sb.begin(), sb.end());
    sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
    if (sb.size() == 1)
        sb.push_back(yb.back()); // zero kernel: keep one cell

    // Stage 2: rearrange each s-cell's column in x.
    SectionedKernel out;
    out.y_breakpoints = sb;
    out.columns.reserve(sb.size() - 1);
    for (std::size_t j = 0; j + 1 < sb.size(); ++j) {
        double mid = 0.5 * (sb[j] + sb[j + 1]);
        std::vector<std::pair<double, double>> slabs(nx);
        for (std::size_t i = 0; i < nx; ++i)
            slabs[i] = {rows[i](mid), xb[i + 1] - xb[i]};
        out.columns.push_back(sorted_step(std::move(slabs)));
    }
    return out;
}

Grid2DKernel iterated_rearrangement(const Grid2DKernel& K) {
    SectionedKernel sec = iterated_rearrangement_sections(K);
    std::vector<double> tb{0.0};
    for (const auto& col : sec.columns)
        for (double b : col.breakpoints())
            if (b > 0.0)
                tb.push_back(b);
    std::sort(tb.begin(), tb.end());
    tb.erase(std::unique(tb.begin(), tb.end()), tb.end());
    if (tb.size() == 1)
        tb.push_back(K.x_breakpoints().back());

    std::size_t nt = tb.size() - 1, ns = sec.columns.size();
    std::vector<double> cells(nt * ns);
    for (std::size_t i = 0; i < nt; ++i) {
        double mid = 0.5 * (tb[i] + tb[i + 1]);
        for (std::size_t j = 0; j < ns; ++j)
            cells[i * ns + j] = sec.columns[j](mid);
    }
    return Grid2DKernel(std::move(tb), sec.y_breakpoints, std::move(cells),
                        Monotone::decreasing, Monotone::decreasing);
}

BivariateValue bivariate_rearrangement(const Grid2DKernel& K, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("bivariate_rearrangement: t must be > 0");
    std::vector<std::pair<double, double>> cells; // (value, area)
    const auto& xb = K.x_breakpoints();
    const auto& yb = K.y_breakpoints();
    for (std::size_t i = 0; i < K.nx(); ++i)
        for (std::size_t j = 0; j < K.ny(); ++j)
            if (K.cell(i, j) > 0.0)
                cells.emplace_back(K.cell(i, j),
                                   (xb[i + 1] - xb[i]) * (yb[j + 1] - yb[j]));
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    double cum = 0.0;
    for (const auto& [val, area] : cells) {
        if (t < cum + area)
            return {val, true};
        cum += area;
    }
    return {0.0, true};
}

BivariateValue bivariate_rearrangement(const AnalyticKernel& K, double t,
                                       BivariateMode mode) {
    if (!(t > 0.0))
        throw std::invalid_argument("bivariate_rearrangement: t must be > 0");
    if (K.structure() != AnalyticKernel::Structure::radial_profile || !K.profile())
        throw std::invalid_argument(
            "bivariate_rearrangement: analytic kernels must carry a radial profile");
    const AnalyticFunction& k = *K.profile();
    if (mode == BivariateMode::paper_variant)
        return {k(std::sqrt(t)), true};
    // quarter-plane super-level set {sqrt(x^2+y^2) < r} has area pi r^2 / 4
    if (!k.bounded_domain() && k(1e30) > 1e-12)
        return {0.0, false}; // super-level measure infinite for some lambda > 0
    return {k(2.0 * std::sqrt(t / M_PI)), true};
}

} // namespace olg
