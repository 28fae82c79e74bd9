#ifndef OLG_CONDITIONS_HPP
#define OLG_CONDITIONS_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "olg/operators.hpp"
#include "olg/orlicz.hpp"

namespace olg {

enum class Verdict {
    holds_estimated,
    violated_witness,
    inconclusive_growth,
    divergent_term
};

const char* to_string(Verdict v);

struct GridPointResult {
    double lambda = 0.0; // 0 when the condition has no lambda sweep
    double x = 0.0;
    double required_constant = 0.0; // inf marks a point no constant serves
    bool divergent = false;
};

struct Witness {
    std::vector<double> point;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Semi-decision certificate: finite grids certify violation exactly but can
/// only estimate "holds"; the refinement history records how the estimate
/// moved as the grid was refined.
struct ConditionReport {
    std::string condition_id;
    Verdict verdict = Verdict::holds_estimated;
    double best_constant_estimate = 0.0; // sup of required constants
    std::vector<GridPointResult> points;
    std::vector<Witness> witnesses;
    std::vector<std::string> notes;
    std::vector<double> refinement_history;
    std::map<std::string, double> metrics;
};

struct PowerParams {
    double p = 2.0, q = 2.0;
    std::optional<double> r; // exponent in (vi')/(viii'); no default is defined
    double p_conj() const { return p / (p - 1.0); }
    double q_conj() const { return q / (q - 1.0); }
};

struct ConditionGrids {
    std::vector<double> lambda_grid; // defaults: log 1e-4..1e4, 25 points
    std::vector<double> x_grid;      // defaults: log 1e-3..1e3, 49 points
    static ConditionGrids defaults();
};

/// Growth condition K(x,y) <= K(x,z) + K(z,y) over ordered triples (y,z,x).
ConditionReport check_growth(const std::function<double(double, double)>& K,
                             const std::vector<std::array<double, 3>>& triples);

struct WeightedSetup {
    NFunction phi1, phi2;
    Weight w, t_w, u, v;
    std::function<double(double, double)> K;
    bool hardy_indicator = false; // K = chi_(0,x)(y): only the first condition
    QuadratureSpec quad = {};
};

std::vector<ConditionReport> check_theorem2(const WeightedSetup& setup,
                                            const ConditionGrids& grids);

std::vector<ConditionReport> check_theorem4_orlicz(const PosFunction& k_star,
                                                   const NFunction& phi1,
                                                   const NFunction& phi2,
                                                   const ConditionGrids& grids,
                                                   const QuadratureSpec& q = {});

std::vector<ConditionReport> check_power_conditions(const PosFunction& k_star,
                                                    const PowerParams& params,
                                                    const std::vector<double>& x_grid,
                                                    const QuadratureSpec& q = {});

std::vector<ConditionReport> check_theorem7(const NFunction& phi, const Weight& u,
                                            const ConditionGrids& grids,
                                            const QuadratureSpec& q = {});

std::vector<ConditionReport> check_theorem10(const HardyKernels& hk,
                                             const NFunction& phi1,
                                             const NFunction& phi2,
                                             const Weight& u1, const Weight& u2,
                                             const ConditionGrids& grids,
                                             const QuadratureSpec& q = {});

std::vector<ConditionReport> check_theorem12(const HardyKernels& hk,
                                             const PowerParams& params,
                                             const Weight& u1, const Weight& u2,
                                             const std::vector<double>& x_grid,
                                             const QuadratureSpec& q = {});

/// Mixed-norm Kantorovic condition || ||K(x,.)||_{p'} ||_q: inner norms on a
/// log x-grid with a fitted log-log slope, and partial outer integrals over
/// [eps, 1] for a decreasing eps sequence; divergence shows up as unbounded
/// growth of the partials.
ConditionReport kantorovich_probe(const AnalyticKernel& K, const PowerParams& params,
                                  const std::vector<double>& eps_sequence,
                                  const QuadratureSpec& q = {});

} // namespace olg

#endif
