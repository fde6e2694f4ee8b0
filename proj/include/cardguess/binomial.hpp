#ifndef CARDGUESS_BINOMIAL_HPP
#define CARDGUESS_BINOMIAL_HPP

#include <cstdint>
#include <vector>

#include "cardguess/deck.hpp"
#include "cardguess/errors.hpp"
#include "cardguess/rng.hpp"

namespace cardguess {

// n i.i.d. Bin(m, p) variables; for the surrogate, p = t/(nm).
struct BinomialSpec {
    int64_t n = 0;
    int64_t m = 0;
    double p = 0.0;

    BinomialSpec() = default;
    BinomialSpec(int64_t n_, int64_t m_, double p_);
};

enum class SurrogateMode { exact_sum, quadrature };

struct SurrogateValue {
    double value = 0.0;
    SurrogateMode mode = SurrogateMode::exact_sum;
    int grid_size = 0;         // quadrature only
    double refinement_error = 0.0; // |value(grid) - value(grid/2)|, quadrature only
};

struct SurrogateOptions {
    int grid_size = 1024;          // quadrature points (>= 64)
    uint64_t sum_cap = 1'000'000;  // exact-sum length cap on nm
    int workers = 0;               // <= 0: default_workers()
};

// E[max of n i.i.d. Bin(m, p)] = sum_{k=0}^{m-1} (1 - F(k)^n). The CDF is
// accumulated over a pmf window around the mode and F^n is evaluated through
// the survival side (expm1/log1p) when F is close to 1, so the result stays
// accurate even when n amplifies CDF error by 1e6 or more.
double indep_max_expectation(const BinomialSpec& spec);
double indep_max_expectation(int64_t n, int64_t m, double p);

// The independent-binomial surrogate S~ = sum_t E[max Y_i(t)]/t, p = t/(nm).
// exact_sum evaluates every integer t (requires nm <= sum_cap); quadrature
// sums a short exact head and integrates the centered remainder by trapezoid
// in ln t on a stratified grid (uniform in ln t through the bulk, geometric
// clustering toward t = nm where the integrand has a sqrt kink).
SurrogateValue s_tilde(const DeckSpec& spec, SurrogateMode mode,
                       const SurrogateOptions& opts = {});

// Conditional law of one coordinate given the remaining sum, computed through
// the binomial representation: P(Y = j | sum of r i.i.d. Bin(m,p) equals s)
// = Bin(m,p,j) Bin((r-1)m,p,s-j) / Bin(rm,p,s). The value of p cancels
// (Vandermonde); it is kept as an argument precisely so that tests can verify
// the cancellation numerically. Returns pmf indexed by j = 0..m.
std::vector<double> conditional_type_pmf(int64_t m, int64_t r, int64_t s, double p);

// Samples (X_1,...,X_n) ~ multivariate hypergeometric with t cards remaining
// by sequential conditional-binomial sampling (exact, O(nm) per sample).
std::vector<int64_t> conditional_sample(const DeckSpec& spec, int64_t t, RngStream& rng);

// E[max Z_i] - sqrt(2 ln n) with Z_i = (Y_i - mp)/sqrt(mp(1-p)); O(1) in the
// admissible regime by the Feller-based normal comparison.
double feller_gap(int64_t n, int64_t m, double p);

} // namespace cardguess

#endif
