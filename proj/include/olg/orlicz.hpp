#ifndef OLG_ORLICZ_HPP
#define OLG_ORLICZ_HPP

#include <utility>
#include <vector>

#include "olg/analytic_function.hpp"
#include "olg/quadrature.hpp"

namespace olg {

/// N-function Phi(x) = integral_0^x phi, phi nondecreasing from 0 onto R_+.
/// Either a power c*t^p (p>1) or a generic function with phi tabulated as a
/// strictly increasing piecewise-linear map, extended by its last slope.
class NFunction {
public:
    static NFunction power(double p, double coeff = 1.0);
    // knots (t_i, phi(t_i)); an implicit (0,0) knot is prepended if missing.
    static NFunction generic(std::vector<std::pair<double, double>> phi_knots);

    double phi(double t) const;
    double phi_inverse(double s) const;
    double operator()(double t) const; // Phi(t)
    double inverse(double y) const;    // Phi^{-1}(y)

    NFunction complementary() const; // Psi(t) = integral_0^t phi^{-1}

    bool is_power() const { return power_; }
    double power_exponent() const { return p_; }
    double power_coeff() const { return coeff_; }

private:
    NFunction() = default;

    bool power_ = false;
    double p_ = 0.0, coeff_ = 0.0;

    // generic representation
    std::vector<double> kt_;   // knot abscissae, kt_[0] = 0
    std::vector<double> kphi_; // phi at knots, kphi_[0] = 0
    std::vector<double> kPhi_; // Phi at knots (exact trapezoid cumulative)
    double end_slope_ = 0.0;   // phi slope beyond the last knot, > 0
};

/// Weight u >= 0 with on-demand cumulative U(x) = integral_0^x u.
class Weight {
public:
    explicit Weight(PosFunction u, bool infinite_mass);

    static Weight one(); // u == 1 on R_+
    static Weight from_step(StepFunction u);
    static Weight from_analytic(AnalyticFunction u, bool infinite_mass);

    double operator()(double x) const { return eval(u_, x); }
    double cumulative(double x, const QuadratureSpec& q = {}) const;
    bool infinite_mass() const { return infinite_mass_; }
    const PosFunction& density() const { return u_; }

private:
    PosFunction u_;
    bool infinite_mass_;
};

/// integral Phi(f/lambda) u; divergent is a first-class outcome.
Integral modular(const PosFunction& f, const NFunction& Phi, const Weight& u,
                 double lambda, const QuadratureSpec& q = {});

struct GaugeNormOptions {
    double lambda_rel_tol = 1e-10;
    double bracket_cap = 1e15; // "norm overflow" marker beyond this
    QuadratureSpec quad = {};
};

/// Luxemburg norm inf{lambda > 0 : modular <= 1}; +inf marks overflow.
double gauge_norm(const PosFunction& f, const NFunction& Phi, const Weight& u,
                  const GaugeNormOptions& opt = {});

struct Delta2Result {
    double sup_ratio = 0.0;
    bool bounded = true;
};

/// sup of Phi(2t)/Phi(t) over a log grid on [T, 1e6*T]; an estimate, with an
/// unbounded verdict when the ratio still grows at the grid end.
Delta2Result delta2_ratio(const NFunction& Phi, double T, int grid_size = 200);

/// rho_d(h) = rho((1/t) integral_0^t h) under (Phi, u).
double down_dual_norm(const PosFunction& h, const NFunction& Phi,
                      const Weight& u, const GaugeNormOptions& opt = {});

} // namespace olg

#endif
