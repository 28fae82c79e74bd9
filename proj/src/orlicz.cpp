#include "olg/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "olg/common.hpp"

namespace olg {

NFunction NFunction::power(double p, double coeff) {
    if (!(p > 1.0) || !(coeff > 0.0))
        throw std::invalid_argument("NFunction::power: need p > 1, coeff > 0");
    NFunction n;
    n.power_ = true;
    n.p_ = p;
    n.coeff_ = coeff;
    return n;
}

NFunction NFunction::generic(std::vector<std::pair<double, double>> phi_knots) {
    if (!phi_knots.empty() && phi_knots.front().first == 0.0) {
        if (phi_knots.front().second != 0.0)
            throw std::invalid_argument("NFunction::generic: phi(0) must be 0");
    } else {
        phi_knots.insert(phi_knots.begin(), {0.0, 0.0});
    }
    if (phi_knots.size() < 2)
        throw std::invalid_argument("NFunction::generic: need at least one positive knot");
    NFunction n;
    for (const auto& [t, ph] : phi_knots) {
        if (!n.kt_.empty() && (t <= n.kt_.back() || ph <= n.kphi_.back()))
            throw std::invalid_argument(
                "NFunction::generic: knots must be strictly increasing in t and phi");
        n.kt_.push_back(t);
        n.kphi_.push_back(ph);
    }
    n.kPhi_.resize(n.kt_.size(), 0.0);
    for (std::size_t i = 1; i < n.kt_.size(); ++i)
        n.kPhi_[i] = n.kPhi_[i - 1] +
                     0.5 * (n.kphi_[i] + n.kphi_[i - 1]) * (n.kt_[i] - n.kt_[i - 1]);
    std::size_t m = n.kt_.size();
    n.end_slope_ = (n.kphi_[m - 1] - n.kphi_[m - 2]) / (n.kt_[m - 1] - n.kt_[m - 2]);
    return n;
}

double NFunction::phi(double t) const {
    if (t <= 0.0)
        return 0.0;
    if (power_)
        return coeff_ * p_ * std::pow(t, p_ - 1.0);
    if (t >= kt_.back())
        return kphi_.back() + end_slope_ * (t - kt_.back());
    auto it = std::upper_bound(kt_.begin(), kt_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - kt_.begin()) - 1;
    double w = (t - kt_[i]) / (kt_[i + 1] - kt_[i]);
    return kphi_[i] + w * (kphi_[i + 1] - kphi_[i]);
}

double NFunction::phi_inverse(double s) const {
    if (s <= 0.0)
        return 0.0;
    if (power_)
        return std::pow(s / (coeff_ * p_), 1.0 / (p_ - 1.0));
    if (s >= kphi_.back())
        return kt_.back() + (s - kphi_.back()) / end_slope_;
    auto it = std::upper_bound(kphi_.begin(), kphi_.end(), s);
    std::size_t i = static_cast<std::size_t>(it - kphi_.begin()) - 1;
    double w = (s - kphi_[i]) / (kphi_[i + 1] - kphi_[i]);
    return kt_[i] + w * (kt_[i + 1] - kt_[i]);
}

double NFunction::operator()(double t) const {
    if (t <= 0.0)
        return 0.0;
    if (power_)
        return coeff_ * std::pow(t, p_);
    std::size_t i;
    if (t >= kt_.back())
        i = kt_.size() - 1;
    else
        i = static_cast<std::size_t>(std::upper_bound(kt_.begin(), kt_.end(), t) -
                                     kt_.begin()) - 1;
    return kPhi_[i] + 0.5 * (kphi_[i] + phi(t)) * (t - kt_[i]);
}

double NFunction::inverse(double y) const {
    if (y <= 0.0)
        return 0.0;
    if (power_)
        return std::pow(y / coeff_, 1.0 / p_);
    std::size_t i;
    if (y >= kPhi_.back())
        i = kt_.size() - 1;
    else
        i = static_cast<std::size_t>(std::upper_bound(kPhi_.begin(), kPhi_.end(), y) -
                                     kPhi_.begin()) - 1;
    // On the segment Phi(kt_[i] + d) = kPhi_[i] + B d + C d^2
    double B = kphi_[i];
    double C = 0.5 * (i + 1 < kt_.size()
                          ? (kphi_[i + 1] - kphi_[i]) / (kt_[i + 1] - kt_[i])
                          : end_slope_);
    double rem = y - kPhi_[i];
    double d = C > 0.0 ? (-B + std::sqrt(B * B + 4.0 * C * rem)) / (2.0 * C)
                       : rem / B;
    return kt_[i] + d;
}

NFunction NFunction::complementary() const {
    if (power_) {
        double pc = p_ / (p_ - 1.0);
        double cc = std::pow(coeff_ * p_, -1.0 / (p_ - 1.0)) / pc;
        return power(pc, cc);
    }
    std::vector<std::pair<double, double>> inv;
    inv.reserve(kt_.size());
    for (std::size_t i = 0; i < kt_.size(); ++i)
        inv.emplace_back(kphi_[i], kt_[i]);
    NFunction n = generic(std::move(inv));
    n.end_slope_ = 1.0 / end_slope_;
    return n;
}

Weight::Weight(PosFunction u, bool infinite_mass)
    : u_(std::move(u)), infinite_mass_(infinite_mass) {}

Weight Weight::one() { return Weight(AnalyticFunction::constant(1.0), true); }

Weight Weight::from_step(StepFunction u) { return Weight(std::move(u), false); }

Weight Weight::from_analytic(AnalyticFunction u, bool infinite_mass) {
    return Weight(std::move(u), infinite_mass);
}

double Weight::cumulative(double x, const QuadratureSpec& q) const {
    return integrate(u_, 0.0, x, q).value;
}

namespace {

// Decay exponent of Phi(f/lambda) given the decay exponent of f: power
// N-functions compose exactly; generic ones are quadratic near 0 and at inf.
double composed_exponent(const NFunction& Phi, double sigma) {
    return Phi.is_power() ? Phi.power_exponent() * sigma : 2.0 * sigma;
}

std::optional<DecayHint> composed_tail(const NFunction& Phi,
                                       const std::optional<DecayHint>& f_tail,
                                       const PosFunction& u) {
    if (!f_tail)
        return std::nullopt;
    double p = Phi.is_power() ? Phi.power_exponent() : 2.0;
    std::optional<DecayHint> u_tail;
    if (const auto* a = std::get_if<AnalyticFunction>(&u))
        u_tail = a->tail_hint();
    if (f_tail->kind == DecayHint::Kind::exponential) {
        double rate = p * f_tail->param;
        if (u_tail && u_tail->kind == DecayHint::Kind::exponential)
            rate += u_tail->param;
        return DecayHint::exponential(rate);
    }
    double expo = p * f_tail->param;
    if (u_tail) {
        if (u_tail->kind == DecayHint::Kind::exponential)
            return DecayHint::exponential(u_tail->param);
        expo += u_tail->param;
    }
    return DecayHint::power(expo);
}

} // namespace

Integral modular(const PosFunction& f, const NFunction& Phi, const Weight& u,
                 double lambda, const QuadratureSpec& q) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("modular: lambda must be > 0");

    if (const auto* fs = std::get_if<StepFunction>(&f)) {
        const auto& bp = fs->breakpoints();
        const auto& fv = fs->values();
        KahanSum s;
        if (const auto* us = std::get_if<StepFunction>(&u.density())) {
            for (std::size_t i = 0; i < fv.size(); ++i) {
                if (fv[i] == 0.0)
                    continue;
                double c = Phi(fv[i] / lambda);
                s.add(c * us->integral(bp[i], bp[i + 1]));
            }
        } else {
            const auto& ua = std::get<AnalyticFunction>(u.density());
            for (std::size_t i = 0; i < fv.size(); ++i) {
                if (fv[i] == 0.0)
                    continue;
                Integral w = integrate(ua, bp[i], bp[i + 1], q);
                if (!w.converged())
                    return {0.0, w.status, 0.0};
                s.add(Phi(fv[i] / lambda) * w.value);
            }
        }
        Integral r;
        r.value = s.value();
        return r;
    }

    const auto& fa = std::get<AnalyticFunction>(f);
    double end = std::min(fa.domain_end(), domain_end(u.density()));
    std::optional<double> head;
    if (fa.head_power())
        head = composed_exponent(Phi, *fa.head_power());
    std::optional<DecayHint> tail = composed_tail(Phi, fa.tail_hint(), u.density());

    const Weight* uw = &u;
    AnalyticFunction g(
        [fa, Phi, uw, lambda](double t) {
            double ft = fa(t);
            if (ft == 0.0)
                return 0.0;
            return Phi(ft / lambda) * (*uw)(t);
        },
        std::isfinite(end) ? end : 0.0, tail, Monotone::none, head);
    if (std::isfinite(end))
        return integrate(g, 0.0, end, q);
    return integrate_tail(g, 0.0, q);
}

double gauge_norm(const PosFunction& f, const NFunction& Phi, const Weight& u,
                  const GaugeNormOptions& opt) {
    if (const auto* fs = std::get_if<StepFunction>(&f))
        if (fs->is_zero())
            return 0.0;

    auto m = [&](double lambda) -> double {
        Integral r = modular(f, Phi, u, lambda, opt.quad);
        if (!r.converged())
            return kInf; // failed evaluations cannot certify modular <= 1
        return r.value;
    };

    double lo = 1.0, hi = 1.0;
    if (m(1.0) > 1.0) {
        while (m(hi) > 1.0) {
            hi *= 2.0;
            if (hi > opt.bracket_cap)
                return kInf; // norm overflow
        }
        lo = hi * 0.5;
    } else {
        while (m(lo) <= 1.0) {
            lo *= 0.5;
            if (lo < 1.0 / opt.bracket_cap)
                return 0.0;
        }
        hi = lo * 2.0;
    }
    while (hi - lo > opt.lambda_rel_tol * hi) {
        double mid = 0.5 * (lo + hi);
        if (m(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Delta2Result delta2_ratio(const NFunction& Phi, double T, int grid_size) {
    if (!(T > 0.0))
        throw std::invalid_argument("delta2_ratio: T must be > 0");
    std::vector<double> g = log_grid(T, 1e6 * T, static_cast<std::size_t>(grid_size));
    Delta2Result r;
    double late_start = 0.0, early_sup = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double ratio = Phi(2.0 * g[i]) / Phi(g[i]);
        r.sup_ratio = std::max(r.sup_ratio, ratio);
        if (i < g.size() * 9 / 10)
            early_sup = std::max(early_sup, ratio);
        else if (late_start == 0.0)
            late_start = ratio;
    }
    // still growing at the grid end: call it unbounded
    r.bounded = !(r.sup_ratio > early_sup * 1.01 && r.sup_ratio > late_start * 0.999);
    return r;
}

double down_dual_norm(const PosFunction& h, const NFunction& Phi, const Weight& u,
                      const GaugeNormOptions& opt) {
    if (const auto* hs = std::get_if<StepFunction>(&h))
        if (hs->is_zero())
            return 0.0;

    std::optional<double> head = 0.0;
    std::optional<DecayHint> tail = DecayHint::power(-1.0);
    if (const auto* ha = std::get_if<AnalyticFunction>(&h)) {
        if (ha->head_power() && *ha->head_power() < 0.0)
            head = *ha->head_power();
        if (!ha->bounded_domain() && ha->tail_hint() &&
            ha->tail_hint()->kind == DecayHint::Kind::power &&
            ha->tail_hint()->param >= -1.0)
            tail = DecayHint::power(ha->tail_hint()->param + 1.0);
    }
    PosFunction hcopy = h;
    QuadratureSpec q = opt.quad;
    AnalyticFunction avg(
        [hcopy, q](double t) { return integrate(hcopy, 0.0, t, q).value / t; }, 0.0,
        tail, Monotone::none, head);
    return gauge_norm(avg, Phi, u, opt);
}

} // namespace olg
