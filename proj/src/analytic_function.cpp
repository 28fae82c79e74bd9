#include "olg/analytic_function.hpp"

#include <cmath>
#include <stdexcept>

#include "olg/common.hpp"

namespace olg {

AnalyticFunction::AnalyticFunction(std::function<double(double)> evaluator,
                                   double domain_end,
                                   std::optional<DecayHint> tail_hint,
                                   Monotone monotone,
                                   std::optional<double> head_power)
    : eval_(std::move(evaluator)),
      domain_end_(domain_end > 0.0 ? domain_end : kInf),
      tail_hint_(tail_hint),
      head_power_(head_power),
      monotone_(monotone) {
    if (!eval_)
        throw std::invalid_argument("AnalyticFunction: empty evaluator");
}

double AnalyticFunction::operator()(double t) const {
    if (t < 0.0 || t >= domain_end_)
        return 0.0;
    return eval_(t);
}

bool AnalyticFunction::bounded_domain() const { return std::isfinite(domain_end_); }

AnalyticFunction AnalyticFunction::constant(double c) {
    return AnalyticFunction([c](double) { return c; }, 0.0, DecayHint::power(0.0),
                            Monotone::none, 0.0);
}

AnalyticFunction AnalyticFunction::power(double exponent, double domain_end) {
    auto f = [exponent](double t) { return std::pow(t, exponent); };
    Monotone m = exponent < 0   ? Monotone::decreasing
                 : exponent > 0 ? Monotone::increasing
                                : Monotone::none;
    return AnalyticFunction(f, domain_end, DecayHint::power(exponent), m, exponent);
}

AnalyticFunction AnalyticFunction::exp_decay(double rate) {
    return AnalyticFunction([rate](double t) { return std::exp(-rate * t); }, 0.0,
                            DecayHint::exponential(rate), Monotone::decreasing, 0.0);
}

AnalyticFunction AnalyticFunction::from_step(const StepFunction& f) {
    StepFunction copy = f;
    return AnalyticFunction([copy](double t) { return copy(t); }, copy.support_end(),
                            std::nullopt, Monotone::none, 0.0);
}

double eval(const PosFunction& f, double t) {
    return std::visit([t](const auto& g) { return g(t); }, f);
}

double domain_end(const PosFunction& f) {
    if (const auto* s = std::get_if<StepFunction>(&f))
        return s->support_end();
    return std::get<AnalyticFunction>(f).domain_end();
}

} // namespace olg
