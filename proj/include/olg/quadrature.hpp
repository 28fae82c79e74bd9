#ifndef OLG_QUADRATURE_HPP
#define OLG_QUADRATURE_HPP

#include <vector>

#include "olg/analytic_function.hpp"
#include "olg/step_function.hpp"

namespace olg {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_subdivisions = 4000;
};

enum class IntegralStatus { converged, divergent, failed };

/// Divergence is data, not an exception: the Kantorovic probe needs to
/// observe it.  `value` carries the partial estimate when not converged.
struct Integral {
    double value = 0.0;
    IntegralStatus status = IntegralStatus::converged;
    double error = 0.0;

    bool converged() const { return status == IntegralStatus::converged; }
    bool divergent() const { return status == IntegralStatus::divergent; }
};

Integral integrate(const StepFunction& f, double a, double b,
                   const QuadratureSpec& q = {});
Integral integrate(const AnalyticFunction& f, double a, double b,
                   const QuadratureSpec& q = {});
Integral integrate(const PosFunction& f, double a, double b,
                   const QuadratureSpec& q = {});

Integral integrate_tail(const StepFunction& f, double a,
                        const QuadratureSpec& q = {});
Integral integrate_tail(const AnalyticFunction& f, double a,
                        const QuadratureSpec& q = {});
Integral integrate_tail(const PosFunction& f, double a,
                        const QuadratureSpec& q = {});

/// Cell averages of f on the grid (adaptive quadrature per cell).
StepFunction discretize(const AnalyticFunction& f,
                        const std::vector<double>& grid,
                        const QuadratureSpec& q = {});

} // namespace olg

#endif
