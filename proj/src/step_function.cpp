#include "olg/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "olg/common.hpp"

namespace olg {

namespace {

void validate(const std::vector<double>& bp, const std::vector<double>& v) {
    if (bp.empty() || bp.front() != 0.0)
        throw std::invalid_argument("StepFunction: breakpoints must start at 0");
    if (v.size() + 1 != bp.size())
        throw std::invalid_argument("StepFunction: need one value per slab");
    for (std::size_t i = 0; i < bp.size(); ++i) {
        if (!std::isfinite(bp[i]))
            throw std::invalid_argument("StepFunction: non-finite breakpoint");
        if (i > 0 && bp[i] <= bp[i - 1])
            throw std::invalid_argument("StepFunction: breakpoints must increase strictly");
    }
    for (double x : v)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("StepFunction: values must be finite and nonnegative");
}

} // namespace

StepFunction::StepFunction() : breakpoints_{0.0} {}

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    validate(breakpoints_, values_);
}

StepFunction StepFunction::indicator(double end) {
    return StepFunction({0.0, end}, {1.0});
}

StepFunction StepFunction::constant(double value, double end) {
    return StepFunction({0.0, end}, {value});
}

bool StepFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double StepFunction::operator()(double t) const {
    if (t < 0.0 || t >= breakpoints_.back() || values_.empty())
        return 0.0;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return values_[i];
}

double StepFunction::integral() const {
    KahanSum s;
    for (std::size_t i = 0; i < values_.size(); ++i)
        s.add(values_[i] * (breakpoints_[i + 1] - breakpoints_[i]));
    return s.value();
}

double StepFunction::integral(double a, double b) const {
    if (a > b)
        throw std::invalid_argument("StepFunction::integral: a > b");
    a = std::max(a, 0.0);
    b = std::min(b, breakpoints_.back());
    if (a >= b)
        return 0.0;
    KahanSum s;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        double lo = std::max(a, breakpoints_[i]);
        double hi = std::min(b, breakpoints_[i + 1]);
        if (hi > lo)
            s.add(values_[i] * (hi - lo));
    }
    return s.value();
}

double StepFunction::max_value() const {
    double m = 0.0;
    for (double v : values_)
        m = std::max(m, v);
    return m;
}

StepFunction StepFunction::scaled(double c) const {
    if (!(c >= 0.0))
        throw std::invalid_argument("StepFunction::scaled: negative factor");
    std::vector<double> v = values_;
    for (double& x : v)
        x *= c;
    return StepFunction(breakpoints_, std::move(v));
}

namespace {

template <class Combine>
StepFunction merge(const StepFunction& f, const StepFunction& g, Combine&& op) {
    std::vector<double> bp;
    bp.reserve(f.breakpoints().size() + g.breakpoints().size());
    std::merge(f.breakpoints().begin(), f.breakpoints().end(),
               g.breakpoints().begin(), g.breakpoints().end(), std::back_inserter(bp));
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    std::vector<double> v(bp.size() - 1);
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        double mid = 0.5 * (bp[i] + bp[i + 1]);
        v[i] = op(f(mid), g(mid));
    }
    return StepFunction(std::move(bp), std::move(v));
}

} // namespace

StepFunction pointwise_product(const StepFunction& f, const StepFunction& g) {
    return merge(f, g, [](double a, double b) { return a * b; });
}

StepFunction pointwise_sum(const StepFunction& f, const StepFunction& g) {
    return merge(f, g, [](double a, double b) { return a + b; });
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() < 2 || xs_.size() != ys_.size())
        throw std::invalid_argument("PiecewiseLinear: need matching node arrays");
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (xs_[i] <= xs_[i - 1])
            throw std::invalid_argument("PiecewiseLinear: nodes must increase strictly");
    for (double y : ys_)
        if (!(y >= 0.0) || !std::isfinite(y))
            throw std::invalid_argument("PiecewiseLinear: values must be finite and nonnegative");
}

double PiecewiseLinear::operator()(double x) const {
    if (x <= xs_.front() || x >= xs_.back()) {
        if (x == xs_.front())
            return ys_.front();
        if (x == xs_.back())
            return ys_.back();
        return 0.0;
    }
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    double w = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
    return ys_[i] + w * (ys_[i + 1] - ys_[i]);
}

double PiecewiseLinear::integral(double a, double b) const {
    a = std::max(a, xs_.front());
    b = std::min(b, xs_.back());
    if (a >= b)
        return 0.0;
    KahanSum s;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
        double lo = std::max(a, xs_[i]);
        double hi = std::min(b, xs_[i + 1]);
        if (hi > lo)
            s.add(0.5 * ((*this)(lo) + (*this)(hi)) * (hi - lo));
    }
    return s.value();
}

double PiecewiseLinear::max_value() const {
    double m = 0.0;
    for (double y : ys_)
        m = std::max(m, y);
    return m;
}

double PiecewiseLinear::rearranged_head_integral(double t) const {
    if (t <= 0.0)
        return 0.0;
    // F(lambda) = t*lambda + integral (h - lambda)_+ is convex with
    // F'(lambda) = t - mu(lambda); minimize over the segment-value events.
    struct Seg {
        double lo, hi, len;
    };
    std::vector<Seg> segs;
    segs.reserve(xs_.size() - 1);
    std::vector<double> events{0.0};
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
        double a = ys_[i], b = ys_[i + 1];
        segs.push_back({std::min(a, b), std::max(a, b), xs_[i + 1] - xs_[i]});
        events.push_back(a);
        events.push_back(b);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    auto area_above = [&](double lam) {
        KahanSum s;
        for (const Seg& sg : segs) {
            if (lam >= sg.hi)
                continue;
            if (lam <= sg.lo)
                s.add(sg.len * (0.5 * (sg.lo + sg.hi) - lam));
            else
                s.add(sg.len * (sg.hi - lam) * (sg.hi - lam) / (2.0 * (sg.hi - sg.lo)));
        }
        return s.value();
    };
    auto measure_above = [&](double lam) {
        KahanSum s;
        for (const Seg& sg : segs) {
            if (lam >= sg.hi)
                continue;
            if (lam < sg.lo || sg.hi == sg.lo)
                s.add(sg.len);
            else
                s.add(sg.len * (sg.hi - lam) / (sg.hi - sg.lo));
        }
        return s.value();
    };

    double best = t * events.front() + area_above(events.front());
    for (std::size_t i = 0; i < events.size(); ++i) {
        double lam = events[i];
        best = std::min(best, t * lam + area_above(lam));
        if (i + 1 < events.size()) {
            // interior stationary point: mu(lam*) = t, mu linear on the interval
            double a = events[i], b = events[i + 1];
            double ma = measure_above(a + 1e-15 * (b - a)), mb = measure_above(b - 1e-15 * (b - a));
            if ((ma - t) * (mb - t) < 0.0) {
                double w = (ma - t) / (ma - mb);
                double lam2 = a + w * (b - a);
                best = std::min(best, t * lam2 + area_above(lam2));
            }
        }
    }
    return best;
}

StepFunction PiecewiseLinear::resample(const std::vector<double>& grid) const {
    std::vector<double> v(grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        v[i] = integral(grid[i], grid[i + 1]) / (grid[i + 1] - grid[i]);
    return StepFunction(grid, std::move(v));
}

} // namespace olg
