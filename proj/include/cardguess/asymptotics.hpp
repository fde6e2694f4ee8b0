#ifndef CARDGUESS_ASYMPTOTICS_HPP
#define CARDGUESS_ASYMPTOTICS_HPP

#include <cstdint>

#include "cardguess/deck.hpp"

namespace cardguess {

enum class AsymptoticFormula { diaconis_graham, he_ottolini, main };

struct AsymptoticEstimate {
    double value = 0.0;
    AsymptoticFormula formula = AsymptoticFormula::main;
    DeckSpec spec;
    bool admissible = true; // main formula only: regime condition satisfied
};

// Regime condition of the joint n,m asymptotic: (ln n)^(3+eps) <= c*m.
struct AdmissibilityParams {
    double c = 1.0;
    double epsilon = 0.1;
};

enum class ChernoffRegime { small_p, large_p };

struct ChernoffParams {
    double theta = 0.0;
    ChernoffRegime regime = ChernoffRegime::large_p;
    double epsilon = 0.0;
};

// H_k = 1 + 1/2 + ... + 1/k (H_0 = 0), compensated summation.
double harmonic(int64_t k);

// M_n: expected maximum of n independent standard normals, by adaptive
// quadrature of n x phi(x) Phi(x)^(n-1) with truncation error < 1e-10.
double normal_max_expectation(int64_t n);

// m + (pi/2) M_n sqrt(m): fixed n, large m.
AsymptoticEstimate dg_estimate(int64_t n, int64_t m);

// H_m H_n + sum_{j=1}^{m-1} (1/j) ln C(m,j): fixed m, large n.
AsymptoticEstimate ho_estimate(int64_t n, int64_t m);

// m + (pi/sqrt 2) sqrt(m ln n); admissible iff (ln n)^(3+eps) <= c*m.
AsymptoticEstimate main_estimate(int64_t n, int64_t m,
                                 const AdmissibilityParams& params = {});

// (ln n)/theta + (mp/theta)(e^theta - 1) - mp, an upper bound for the
// centered maximum E[max_i Ybar_i(t)].
double chernoff_bound(int64_t n, int64_t m, double p, double theta);

// The tail-regime theta choices: small-p uses sqrt(2 ln n/m) (ln 1/p)^(1+eps),
// large-p uses sqrt(2 ln n/m).
ChernoffParams theta_choice(int64_t n, int64_t m, double p, ChernoffRegime regime,
                            double epsilon);

} // namespace cardguess

#endif
