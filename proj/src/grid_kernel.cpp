#include "olg/grid_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace olg {

namespace {

void validate_breaks(const std::vector<double>& b, const char* axis) {
    if (b.size() < 2 || b.front() != 0.0)
        throw std::invalid_argument(std::string("Grid2DKernel: ") + axis +
                                    " breakpoints must start at 0");
    for (std::size_t i = 1; i < b.size(); ++i)
        if (!(b[i] > b[i - 1]) || !std::isfinite(b[i]))
            throw std::invalid_argument(std::string("Grid2DKernel: ") + axis +
                                        " breakpoints must increase strictly");
}

} // namespace

Grid2DKernel::Grid2DKernel(std::vector<double> x_breakpoints,
                           std::vector<double> y_breakpoints,
                           std::vector<double> cell_values, Monotone mono_x,
                           Monotone mono_y)
    : xb_(std::move(x_breakpoints)), yb_(std::move(y_breakpoints)),
      v_(std::move(cell_values)), mono_x_(mono_x), mono_y_(mono_y) {
    validate_breaks(xb_, "x");
    validate_breaks(yb_, "y");
    if (v_.size() != (xb_.size() - 1) * (yb_.size() - 1))
        throw std::invalid_argument("Grid2DKernel: cell matrix size mismatch");
    for (double x : v_)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("Grid2DKernel: cell values must be finite and nonnegative");
    auto ordered = [](double a, double b, Monotone m) {
        return m == Monotone::decreasing ? b <= a
               : m == Monotone::increasing ? a <= b
                                           : true;
    };
    for (std::size_t i = 0; i + 1 < nx(); ++i)
        for (std::size_t j = 0; j < ny(); ++j)
            if (!ordered(cell(i, j), cell(i + 1, j), mono_x_))
                throw std::invalid_argument(
                    "Grid2DKernel: cells violate the declared x-monotonicity");
    for (std::size_t i = 0; i < nx(); ++i)
        for (std::size_t j = 0; j + 1 < ny(); ++j)
            if (!ordered(cell(i, j), cell(i, j + 1), mono_y_))
                throw std::invalid_argument(
                    "Grid2DKernel: cells violate the declared y-monotonicity");
}

double Grid2DKernel::operator()(double x, double y) const {
    if (x < 0.0 || y < 0.0 || x >= xb_.back() || y >= yb_.back())
        return 0.0;
    std::size_t i = static_cast<std::size_t>(
                        std::upper_bound(xb_.begin(), xb_.end(), x) - xb_.begin()) - 1;
    std::size_t j = static_cast<std::size_t>(
                        std::upper_bound(yb_.begin(), yb_.end(), y) - yb_.begin()) - 1;
    return cell(i, j);
}

StepFunction Grid2DKernel::x_section(double x) const {
    if (x < 0.0 || x >= xb_.back())
        return StepFunction();
    std::size_t i = static_cast<std::size_t>(
                        std::upper_bound(xb_.begin(), xb_.end(), x) - xb_.begin()) - 1;
    std::vector<double> vals(ny());
    for (std::size_t j = 0; j < ny(); ++j)
        vals[j] = cell(i, j);
    return StepFunction(yb_, std::move(vals));
}

AnalyticKernel::AnalyticKernel(std::function<double(double, double)> evaluator,
                               Monotone mono_x, Monotone mono_y)
    : eval_(std::move(evaluator)), mono_x_(mono_x), mono_y_(mono_y) {
    if (!eval_)
        throw std::invalid_argument("AnalyticKernel: empty evaluator");
}

AnalyticKernel AnalyticKernel::sum_profile(AnalyticFunction k) {
    AnalyticKernel K([k](double x, double y) { return k(x + y); },
                     Monotone::decreasing, Monotone::decreasing);
    K.structure_ = Structure::sum_profile;
    K.profile_ = std::move(k);
    return K;
}

AnalyticKernel AnalyticKernel::radial_profile(AnalyticFunction k) {
    AnalyticKernel K([k](double x, double y) { return k(std::hypot(x, y)); },
                     Monotone::decreasing, Monotone::decreasing);
    K.structure_ = Structure::radial_profile;
    K.profile_ = std::move(k);
    return K;
}

AnalyticKernel AnalyticKernel::pythagorean_power(double exponent) {
    return AnalyticKernel(
        [exponent](double x, double y) { return std::pow(x * x + y * y, exponent); },
        exponent < 0 ? Monotone::decreasing : Monotone::increasing,
        exponent < 0 ? Monotone::decreasing : Monotone::increasing);
}

double AnalyticKernel::operator()(double x, double y) const { return eval_(x, y); }

double eval(const Kernel& K, double x, double y) {
    return std::visit([&](const auto& k) { return k(x, y); }, K);
}

} // namespace olg
