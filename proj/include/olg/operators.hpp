#ifndef OLG_OPERATORS_HPP
#define OLG_OPERATORS_HPP

#include <memory>

#include "olg/grid_kernel.hpp"
#include "olg/quadrature.hpp"
#include "olg/rearrange.hpp"
#include "olg/step_function.hpp"

namespace olg {

/// (If)(t) = integral_0^t f, exact for step input.
double hardy_I(const StepFunction& f, double t);

/// (I_2 f)(t) = integral_0^t f(s)(t-s) ds = (I(If))(t), slab-wise closed form.
double hardy_I2(const StepFunction& f, double t);

/// Exact convolution of compactly supported step functions (n = 1); the
/// result is continuous piecewise linear with nodes at all breakpoint sums.
class Convolution {
public:
    Convolution(StepFunction f, StepFunction g);

    double operator()(double x) const; // exact evaluation
    const PiecewiseLinear& exact() const { return pl_; }
    StepFunction resampled(std::size_t resolution) const;

private:
    StepFunction f_, g_;
    PiecewiseLinear pl_;
};

Convolution convolve(const StepFunction& f, const StepFunction& g);

/// (T_K f)(x) = integral K(x,y) f(y) dy; exact for grid kernels.
Integral apply_kernel(const Grid2DKernel& K, const StepFunction& f, double x);
Integral apply_kernel(const AnalyticKernel& K, const StepFunction& f, double x,
                      const QuadratureSpec& q = {});
Integral apply_kernel(const Kernel& K, const StepFunction& f, double x,
                      const QuadratureSpec& q = {});

/// (T'_K g)(y) = integral K(x,y) g(x) dx.
Integral associate_apply(const Grid2DKernel& K, const StepFunction& g, double y);
Integral associate_apply(const AnalyticKernel& K, const StepFunction& g, double y,
                         const QuadratureSpec& q = {});

/// (Sg)(x) = integral_0^x (T'_K g)(z) dz.
Integral s_transform(const Grid2DKernel& K, const StepFunction& g, double x);

/// S for the averaging kernel chi_(0,x)(y)/x, via the closed form
/// integral_0^x g + x integral_x^inf g(y) dy / y.  Exact for step g.
double s_transform_averaging(const StepFunction& g, double x);

/// M1/M2 kernels built from a kernel L nonincreasing in both variables:
/// M1(x,y) = integral_0^x L(y,z) dz, M2(y,x) = integral_0^{1/x} L(1/y,z) dz.
class HardyKernels {
public:
    explicit HardyKernels(Kernel L, QuadratureSpec q = {});

    double M1(double x, double y) const;
    Integral M2(double y, double x) const; // may diverge as x -> 0

    // (H1 f)(x) = integral_0^x M1(x,y) f(y) dy, exact for grid L.
    Integral H1(const StepFunction& f, double x) const;
    // (H2 g)(y) = integral_0^y M2(y,x) g(x) dx.
    Integral H2(const StepFunction& g, double y) const;

    const Kernel& L() const { return L_; }

private:
    // cumulative of an x-row of L along its second argument
    Integral row_cumulative(double row, double upto) const;

    Kernel L_;
    QuadratureSpec q_;
    std::vector<std::vector<double>> grid_cum_; // per row, prefix along y
};

HardyKernels build_hardy_kernels(const Kernel& L, const QuadratureSpec& q = {});

struct OneilMajorant {
    double rhs2 = 0.0;      // right side of the O'Neil inequality at t
    double integrand3 = 0.0; // the HLP-dominating integrand at t
};

OneilMajorant oneil_majorant(const StepFunction& f, const StepFunction& g, double t);

} // namespace olg

#endif
