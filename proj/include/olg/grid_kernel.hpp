#ifndef OLG_GRID_KERNEL_HPP
#define OLG_GRID_KERNEL_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "olg/analytic_function.hpp"

namespace olg {

/// Bivariate kernel K(x,y) >= 0, cellwise constant on a rectangular grid
/// starting at the origin, zero outside the grid.
class Grid2DKernel {
public:
    Grid2DKernel(std::vector<double> x_breakpoints,
                 std::vector<double> y_breakpoints,
                 std::vector<double> cell_values, // row-major, nx * ny
                 Monotone mono_x = Monotone::none,
                 Monotone mono_y = Monotone::none);

    const std::vector<double>& x_breakpoints() const { return xb_; }
    const std::vector<double>& y_breakpoints() const { return yb_; }
    std::size_t nx() const { return xb_.size() - 1; }
    std::size_t ny() const { return yb_.size() - 1; }
    double cell(std::size_t i, std::size_t j) const { return v_[i * ny() + j]; }
    Monotone mono_x() const { return mono_x_; }
    Monotone mono_y() const { return mono_y_; }

    double operator()(double x, double y) const;

    // The x-section y -> K(x,y) as a step function.
    StepFunction x_section(double x) const;

private:
    std::vector<double> xb_, yb_;
    std::vector<double> v_;
    Monotone mono_x_, mono_y_;
};

/// Bivariate kernel given by an evaluator.  The structure tag records the
/// closed forms the worked examples are built from, so that the rearrangement
/// and Hardy-kernel machinery can use exact reductions where they exist.
class AnalyticKernel {
public:
    enum class Structure {
        generic,
        sum_profile,   // K(x,y) = k(x + y)
        radial_profile // K(x,y) = k(sqrt(x^2 + y^2))
    };

    AnalyticKernel(std::function<double(double, double)> evaluator,
                   Monotone mono_x = Monotone::none,
                   Monotone mono_y = Monotone::none);

    static AnalyticKernel sum_profile(AnalyticFunction k);
    static AnalyticKernel radial_profile(AnalyticFunction k);
    // K(x,y) = (x^2 + y^2)^exponent
    static AnalyticKernel pythagorean_power(double exponent);

    double operator()(double x, double y) const;
    Structure structure() const { return structure_; }
    const std::optional<AnalyticFunction>& profile() const { return profile_; }
    Monotone mono_x() const { return mono_x_; }
    Monotone mono_y() const { return mono_y_; }

private:
    std::function<double(double, double)> eval_;
    Monotone mono_x_, mono_y_;
    Structure structure_ = Structure::generic;
    std::optional<AnalyticFunction> profile_;
};

using Kernel = std::variant<Grid2DKernel, AnalyticKernel>;

double eval(const Kernel& K, double x, double y);

} // namespace olg

#endif
