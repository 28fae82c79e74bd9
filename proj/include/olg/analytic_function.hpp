#ifndef OLG_ANALYTIC_FUNCTION_HPP
#define OLG_ANALYTIC_FUNCTION_HPP

#include <functional>
#include <optional>
#include <variant>

#include "olg/step_function.hpp"

namespace olg {

enum class Monotone { none, decreasing, increasing };

/// Asymptotic decay descriptor.  power: f(t) ~ c * t^exponent;
/// exponential: f(t) ~ c * exp(-rate * t).
struct DecayHint {
    enum class Kind { power, exponential } kind = Kind::power;
    double param = 0.0; // exponent (power) or rate (exponential)

    static DecayHint power(double exponent) { return {Kind::power, exponent}; }
    static DecayHint exponential(double rate) { return {Kind::exponential, rate}; }
};

/// Nonnegative function on (0, domain_end) given by an evaluator, with
/// optional head/tail behavior hints used by the quadrature engine.
class AnalyticFunction {
public:
    AnalyticFunction(std::function<double(double)> evaluator,
                     double domain_end = 0.0, // 0 means +inf
                     std::optional<DecayHint> tail_hint = std::nullopt,
                     Monotone monotone = Monotone::none,
                     std::optional<double> head_power = std::nullopt);

    double operator()(double t) const;

    double domain_end() const { return domain_end_; } // +inf when unbounded
    bool bounded_domain() const;
    const std::optional<DecayHint>& tail_hint() const { return tail_hint_; }
    const std::optional<double>& head_power() const { return head_power_; }
    Monotone monotone() const { return monotone_; }

    // Named constructors for the closed forms the harness uses.
    static AnalyticFunction constant(double c);
    static AnalyticFunction power(double exponent, double domain_end = 0.0);
    static AnalyticFunction exp_decay(double rate = 1.0);
    static AnalyticFunction from_step(const StepFunction& f);

private:
    std::function<double(double)> eval_;
    double domain_end_; // +inf if unbounded
    std::optional<DecayHint> tail_hint_;
    std::optional<double> head_power_;
    Monotone monotone_;
};

/// A nonnegative function in either representation.
using PosFunction = std::variant<StepFunction, AnalyticFunction>;

double eval(const PosFunction& f, double t);
double domain_end(const PosFunction& f); // +inf when unbounded

} // namespace olg

#endif
