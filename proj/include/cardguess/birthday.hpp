#ifndef CARDGUESS_BIRTHDAY_HPP
#define CARDGUESS_BIRTHDAY_HPP

#include <cstdint>

#include "cardguess/deck.hpp"
#include "cardguess/rng.hpp"

namespace cardguess {

// Birthday chain on {1,...,n}: q_{j,j+1} = (n-j)/n, q_{j,1} = j/n. Its return
// time T to state 1 dominates how often the running maximum of appeared
// counts can increase during a game.
struct ChainStats {
    int64_t n = 0;
    double et = 0.0;        // E[T]
    double et2 = 0.0;       // E[T^2]
    uint64_t steps = 0;     // simulated steps (simulation only)
    uint64_t excursions = 0; // returns to state 1 observed (simulation only)
};

// P(T > s) = prod_{i=1}^{s} (1 - i/n); 0 for s >= n. Log-space product.
double return_time_tail(int64_t n, int64_t s);

// E[T] = sum_{s>=0} P(T > s), E[T^2] = sum_{s>=0} (2s+1) P(T > s); exact
// finite sums of the tail product (no Monte Carlo noise).
ChainStats return_time_moments(int64_t n);

// Simulates the chain from state 1 and counts returns to 1.
ChainStats simulate_excursions(int64_t n, uint64_t steps, RngStream& rng);

struct MaxIncreaseEstimate {
    double probability = 0.0; // (m-k) j / (cards remaining), k = max appeared count
    double chain_bound = 0.0; // j/n, the dominating chain's reset probability
};

// Probability that the next draw increases the maximum appeared-so-far count,
// given j types currently attain it. The state is the remaining-counts view;
// the maximal appeared count is k = m - min_i counts[i].
MaxIncreaseEstimate max_increase_probability(const DeckSpec& spec,
                                             const CountsState& state, int64_t j);

// Number of types attaining the maximal appeared-so-far count.
int64_t count_max_appeared(const DeckSpec& spec, const CountsState& state);

} // namespace cardguess

#endif
