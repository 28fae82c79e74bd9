#ifndef OLG_STEP_FUNCTION_HPP
#define OLG_STEP_FUNCTION_HPP

#include <cstddef>
#include <vector>

namespace olg {

/// Nonnegative piecewise-constant function on [0,inf) with finitely many
/// slabs.  Slab i is [breakpoints[i], breakpoints[i+1]) with constant value
/// values[i]; the function is 0 beyond the last breakpoint.
class StepFunction {
public:
    StepFunction(); // identically zero
    StepFunction(std::vector<double> breakpoints, std::vector<double> values);

    static StepFunction indicator(double end); // chi_[0,end)
    static StepFunction constant(double value, double end);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t slab_count() const { return values_.size(); }
    double support_end() const { return breakpoints_.back(); }
    bool is_zero() const;

    double operator()(double t) const;

    double integral() const;
    double integral(double a, double b) const; // exact partial integral
    double max_value() const;

    StepFunction scaled(double c) const;

private:
    std::vector<double> breakpoints_; // strictly increasing, starts at 0
    std::vector<double> values_;      // one per slab, nonnegative
};

// Pointwise product on the merged breakpoint grid; exact.
StepFunction pointwise_product(const StepFunction& f, const StepFunction& g);

// Pointwise sum on the merged breakpoint grid; exact.
StepFunction pointwise_sum(const StepFunction& f, const StepFunction& g);

/// Continuous piecewise-linear function given by nodes (x_i, y_i); zero
/// outside [x_front, x_back].  Used for exact convolution arithmetic.
class PiecewiseLinear {
public:
    PiecewiseLinear(std::vector<double> xs, std::vector<double> ys);

    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }

    double operator()(double x) const;
    double integral(double a, double b) const;
    double max_value() const;

    // integral_0^t of the nonincreasing rearrangement, computed exactly as
    // min_{lambda>=0} [ t*lambda + integral (h - lambda)_+ ].
    double rearranged_head_integral(double t) const;

    // Cell averages on the given grid (exact, since h is linear on refinements).
    StepFunction resample(const std::vector<double>& grid) const;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

} // namespace olg

#endif
