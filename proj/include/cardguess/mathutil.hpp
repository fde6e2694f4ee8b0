#ifndef CARDGUESS_MATHUTIL_HPP
#define CARDGUESS_MATHUTIL_HPP

#include <cmath>
#include <cstdint>

namespace cardguess {

inline double log_choose(int64_t n, int64_t k) {
    if (k < 0 || k > n) return -INFINITY;
    return std::lgamma((double)n + 1.0) - std::lgamma((double)k + 1.0) -
           std::lgamma((double)(n - k) + 1.0);
}

// Kahan compensated accumulator.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace cardguess

#endif
