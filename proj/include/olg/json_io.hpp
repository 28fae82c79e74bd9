#ifndef OLG_JSON_IO_HPP
#define OLG_JSON_IO_HPP

#include "olg/conditions.hpp"
#include "olg/grid_kernel.hpp"
#include "olg/orlicz.hpp"
#include "olg/step_function.hpp"

#include "json.hpp"

namespace olg {

nlohmann::json to_json(const StepFunction& f);
StepFunction step_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Grid2DKernel& K);
Grid2DKernel grid_kernel_from_json(const nlohmann::json& j);

// {"kind":"power","p":2.0[,"coeff":1.0]} or
// {"kind":"generic","phi_knots":[[t,phi(t)],...]}
nlohmann::json to_json(const NFunction& Phi);
NFunction nfunction_from_json(const nlohmann::json& j);

// {"kind":"one"} | {"kind":"step",...} |
// {"kind":"analytic","fn":{...},"infinite_mass":bool}
Weight weight_from_json(const nlohmann::json& j);

// Named analytic functions:
// {"kind":"constant","c":..}, {"kind":"power","exponent":..[,"end":..]},
// {"kind":"exp_decay"[,"rate":..]}, {"kind":"indicator","end":..}
AnalyticFunction analytic_from_json(const nlohmann::json& j);

// {"kind":"step",...} or an analytic descriptor
PosFunction pos_function_from_json(const nlohmann::json& j);

// {"kind":"grid",...} | {"kind":"sum_profile","profile":{...}} |
// {"kind":"radial_profile","profile":{...}} |
// {"kind":"pythagorean_power","exponent":..}
Kernel kernel_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConditionReport& r);
std::string report_csv(const ConditionReport& r); // one row per grid point

} // namespace olg

#endif
