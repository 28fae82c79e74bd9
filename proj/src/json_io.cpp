#include "olg/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace olg {

using nlohmann::json;

json to_json(const StepFunction& f) {
    return {{"kind", "step"},
            {"breakpoints", f.breakpoints()},
            {"values", f.values()}};
}

StepFunction step_from_json(const json& j) {
    return StepFunction(j.at("breakpoints").get<std::vector<double>>(),
                        j.at("values").get<std::vector<double>>());
}

json to_json(const Grid2DKernel& K) {
    std::vector<double> cells(K.nx() * K.ny());
    for (std::size_t i = 0; i < K.nx(); ++i)
        for (std::size_t j = 0; j < K.ny(); ++j)
            cells[i * K.ny() + j] = K.cell(i, j);
    return {{"kind", "grid"},
            {"x_breakpoints", K.x_breakpoints()},
            {"y_breakpoints", K.y_breakpoints()},
            {"cells", cells}};
}

Grid2DKernel grid_kernel_from_json(const json& j) {
    return Grid2DKernel(j.at("x_breakpoints").get<std::vector<double>>(),
                        j.at("y_breakpoints").get<std::vector<double>>(),
                        j.at("cells").get<std::vector<double>>());
}

json to_json(const NFunction& Phi) {
    if (Phi.is_power())
        return {{"kind", "power"},
                {"p", Phi.power_exponent()},
                {"coeff", Phi.power_coeff()}};
    return {{"kind", "generic"}};
}

NFunction nfunction_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "power")
        return NFunction::power(j.at("p").get<double>(), j.value("coeff", 1.0));
    if (kind == "generic") {
        std::vector<std::pair<double, double>> knots;
        for (const auto& k : j.at("phi_knots"))
            knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
        return NFunction::generic(std::move(knots));
    }
    throw std::invalid_argument("nfunction_from_json: unknown kind '" + kind + "'");
}

AnalyticFunction analytic_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant")
        return AnalyticFunction::constant(j.at("c").get<double>());
    if (kind == "power")
        return AnalyticFunction::power(j.at("exponent").get<double>(),
                                       j.value("end", 0.0));
    if (kind == "exp_decay")
        return AnalyticFunction::exp_decay(j.value("rate", 1.0));
    if (kind == "indicator") {
        double end = j.at("end").get<double>();
        if (!(end > 0.0))
            throw std::invalid_argument("analytic_from_json: indicator needs end > 0");
        return AnalyticFunction::from_step(StepFunction::indicator(end));
    }
    throw std::invalid_argument("analytic_from_json: unknown kind '" + kind + "'");
}

Weight weight_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "one")
        return Weight::one();
    if (kind == "step")
        return Weight::from_step(step_from_json(j));
    if (kind == "analytic")
        return Weight::from_analytic(analytic_from_json(j.at("fn")),
                                     j.value("infinite_mass", false));
    throw std::invalid_argument("weight_from_json: unknown kind '" + kind + "'");
}

PosFunction pos_function_from_json(const json& j) {
    if (j.at("kind").get<std::string>() == "step")
        return step_from_json(j);
    return analytic_from_json(j);
}

Kernel kernel_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "grid")
        return grid_kernel_from_json(j);
    if (kind == "sum_profile")
        return AnalyticKernel::sum_profile(analytic_from_json(j.at("profile")));
    if (kind == "radial_profile")
        return AnalyticKernel::radial_profile(analytic_from_json(j.at("profile")));
    if (kind == "pythagorean_power")
        return AnalyticKernel::pythagorean_power(j.at("exponent").get<double>());
    throw std::invalid_argument("kernel_from_json: unknown kind '" + kind + "'");
}

json to_json(const ConditionReport& r) {
    json points = json::array();
    for (const auto& p : r.points)
        points.push_back({{"lambda", p.lambda},
                          {"x", p.x},
                          {"required_constant", p.required_constant},
                          {"divergent", p.divergent}});
    json witnesses = json::array();
    for (const auto& w : r.witnesses)
        witnesses.push_back({{"point", w.point}, {"lhs", w.lhs}, {"rhs", w.rhs}});
    return {{"condition_id", r.condition_id},
            {"verdict", to_string(r.verdict)},
            {"best_constant_estimate", r.best_constant_estimate},
            {"points", points},
            {"witnesses", witnesses},
            {"notes", r.notes},
            {"refinement_history", r.refinement_history},
            {"metrics", r.metrics}};
}

std::string report_csv(const ConditionReport& r) {
    std::string out = "condition_id,lambda,x,required_constant,divergent,verdict\n";
    char buf[256];
    for (const auto& p : r.points) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%d,%s\n",
                      r.condition_id.c_str(), p.lambda, p.x, p.required_constant,
                      p.divergent ? 1 : 0, to_string(r.verdict));
        out += buf;
    }
    return out;
}

} // namespace olg
