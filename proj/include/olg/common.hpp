#ifndef OLG_COMMON_HPP
#define OLG_COMMON_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace olg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier-compensated accumulator; slab sums must be order-insensitive to ~1e-12.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(llo + (lhi - llo) * double(i) / double(n - 1));
    return g;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return g;
}

} // namespace olg

#endif
