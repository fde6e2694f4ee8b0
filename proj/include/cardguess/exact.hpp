#ifndef CARDGUESS_EXACT_HPP
#define CARDGUESS_EXACT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cardguess/deck.hpp"
#include "cardguess/errors.hpp"

namespace cardguess {

enum class ExactMethod { dp, linearity };

struct ExactOptions {
    bool rational = false;        // carry an exact mpq value alongside the double
    uint64_t state_cap = 10'000'000; // max number of canonical DP states
};

struct ExactValue {
    double value = 0.0;
    std::optional<mpq_class> exact; // set in rational mode
    ExactMethod method = ExactMethod::dp;
    DeckSpec spec;

    std::string exact_str() const { return exact ? exact->get_str() : std::string(); }
};

// Per-t profile of E[max_i X_i(t)], t = 1..nm (index t-1).
struct MaxProfile {
    DeckSpec spec;
    std::vector<double> emax;

    double p(int64_t t) const { return (double)t / (double)spec.cards(); }
};

// Number of canonical (sorted) count states, C(n+m, n).
mpz_class canonical_state_count(const DeckSpec& spec);

// Expected optimal score by memoized value recursion over canonical states:
// V(s) = max_i c_i/t + sum_i (c_i/t) V(s - e_i). Throws CapacityError when the
// state count exceeds opts.state_cap.
ExactValue exact_value_dp(const DeckSpec& spec, const ExactOptions& opts = {});

// E[max_i X_i(t)] of the multivariate hypergeometric remaining counts, from
// P(max <= k) = [x^t] (sum_{j<=k} C(m,j) x^j)^n / C(nm, t). Exact big-integer
// coefficient arithmetic throughout.
double max_remaining_expectation(const DeckSpec& spec, int64_t t);
mpq_class max_remaining_expectation_exact(const DeckSpec& spec, int64_t t);

// Full profile plus S_{n,m} = sum_t E[max X(t)]/t (method tag: linearity).
std::pair<MaxProfile, ExactValue> score_decomposition(const DeckSpec& spec,
                                                      const ExactOptions& opts = {});

} // namespace cardguess

#endif
