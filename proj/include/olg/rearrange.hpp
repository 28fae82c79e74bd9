#ifndef OLG_REARRANGE_HPP
#define OLG_REARRANGE_HPP

#include "olg/grid_kernel.hpp"
#include "olg/quadrature.hpp"
#include "olg/step_function.hpp"

namespace olg {

struct RearrangementResult {
    StepFunction star; // nonincreasing, equimeasurable with the input
    double total_measure = 0.0;
};

/// mu_f(lambda) = |{x : f(x) > lambda}|, exact.
double distribution(const StepFunction& f, double lambda);

/// f* by value-descending slab sort; ties merge into one slab.  Exact.
RearrangementResult decreasing_rearrangement(const StepFunction& f);

/// f**(t) = (1/t) integral_0^t f*.
double double_star(const StepFunction& f, double t);

/// Rearrangement on R_+ of x -> k(|x|) on R^n for nonincreasing k:
/// k*(t) = k(Gamma(n/2+1)^{1/n} pi^{-1/2} t^{1/n}).
double radial_profile(const AnalyticFunction& k, int n, double t);

/// Stage-wise representation of the iterated rearrangement
/// L(t,s) = (K^{*2})^{*1}(t,s): a y-grid of cells, each carrying the
/// nonincreasing x-column t -> L(t, s) for s in that cell.
struct SectionedKernel {
    std::vector<double> y_breakpoints;
    std::vector<StepFunction> columns; // one per y-cell

    double operator()(double t, double s) const;
};

SectionedKernel iterated_rearrangement_sections(const Grid2DKernel& K);

/// Full-grid form of the iterated rearrangement (exact; the grid is the
/// refinement of all column breakpoints, so it can be much finer than K's).
Grid2DKernel iterated_rearrangement(const Grid2DKernel& K);

enum class BivariateMode {
    measure_correct, // planar Lebesgue rearrangement over R_+^2
    paper_variant    // K*(t) = k(t^{1/2}) for K(x,y) = k(sqrt(x^2+y^2))
};

struct BivariateValue {
    double value = 0.0;
    bool rearrangeable = true; // false: super-level measure infinite
};

/// K*(t) with planar Lebesgue measure; exact for grid kernels.
BivariateValue bivariate_rearrangement(const Grid2DKernel& K, double t);

/// For radial-profile analytic kernels only.  measure_correct gives
/// k(2 sqrt(t/pi)) (quarter-plane super-level sets); paper_variant gives
/// k(sqrt(t)).
BivariateValue bivariate_rearrangement(const AnalyticKernel& K, double t,
                                       BivariateMode mode = BivariateMode::measure_correct);

} // namespace olg

#endif
