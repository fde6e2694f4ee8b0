#include "cardguess/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cardguess/mathutil.hpp"

namespace cardguess {

namespace {

double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// integrand of M_n
double max_density_x(int64_t n, double x) {
    const double cdf = norm_cdf(x);
    if (cdf <= 0.0) return 0.0;
    const double logw = (double)(n - 1) * std::log(cdf);
    return (double)n * x * norm_pdf(x) * std::exp(logw);
}

double adaptive_simpson(int64_t n, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = max_density_x(n, lm);
    const double frm = max_density_x(n, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(n, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson(n, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

} // namespace

double harmonic(int64_t k) {
    if (k < 0) {
        throw std::invalid_argument("harmonic: k must be >= 0");
    }
    KahanSum sum;
    for (int64_t j = 1; j <= k; ++j) {
        sum.add(1.0 / (double)j);
    }
    return sum.value();
}

double normal_max_expectation(int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("normal_max_expectation: n must be >= 1");
    }
    // integrand mass is inside [-b, b]: the positive tail beyond b carries at
    // most n phi(b) < 1e-12, the negative tail at most phi(b)
    const double b = std::sqrt(2.0 * (std::log((double)n) + 30.0));
    const double m = 0.0;
    const double fa = max_density_x(n, -b);
    const double fm = max_density_x(n, m);
    const double fb = max_density_x(n, b);
    const double whole = (2.0 * b) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(n, -b, b, fa, fm, fb, whole, 1e-12, 30);
}

AsymptoticEstimate dg_estimate(int64_t n, int64_t m) {
    DeckSpec spec(n, m);
    AsymptoticEstimate out;
    out.formula = AsymptoticFormula::diaconis_graham;
    out.spec = spec;
    out.value = (double)m +
                (std::numbers::pi / 2.0) * normal_max_expectation(n) * std::sqrt((double)m);
    return out;
}

AsymptoticEstimate ho_estimate(int64_t n, int64_t m) {
    DeckSpec spec(n, m);
    AsymptoticEstimate out;
    out.formula = AsymptoticFormula::he_ottolini;
    out.spec = spec;
    double value = harmonic(m) * harmonic(n);
    for (int64_t j = 1; j < m; ++j) {
        value += log_choose(m, j) / (double)j;
    }
    out.value = value;
    return out;
}

AsymptoticEstimate main_estimate(int64_t n, int64_t m, const AdmissibilityParams& params) {
    DeckSpec spec(n, m);
    AsymptoticEstimate out;
    out.formula = AsymptoticFormula::main;
    out.spec = spec;
    const double logn = std::log((double)n);
    out.value = (double)m + (std::numbers::pi / std::numbers::sqrt2) *
                                std::sqrt((double)m * logn);
    out.admissible =
        std::pow(logn, 3.0 + params.epsilon) <= params.c * (double)m;
    return out;
}

double chernoff_bound(int64_t n, int64_t m, double p, double theta) {
    if (!(theta > 0.0)) {
        throw std::invalid_argument("chernoff_bound: theta must be > 0");
    }
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("chernoff_bound: p must lie in (0, 1]");
    }
    const double mp = (double)m * p;
    return std::log((double)n) / theta + (mp / theta) * std::expm1(theta) - mp;
}

ChernoffParams theta_choice(int64_t n, int64_t m, double p, ChernoffRegime regime,
                            double epsilon) {
    ChernoffParams out;
    out.regime = regime;
    out.epsilon = epsilon;
    const double base = std::sqrt(2.0 * std::log((double)n) / (double)m);
    if (regime == ChernoffRegime::large_p) {
        out.theta = base;
    } else {
        if (!(p > 0.0)) {
            throw std::invalid_argument("theta_choice: small-p regime needs p > 0");
        }
        out.theta = base * std::pow(std::log(1.0 / p), 1.0 + epsilon);
    }
    return out;
}

} // namespace cardguess
