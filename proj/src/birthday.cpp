#include "cardguess/birthday.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cardguess/mathutil.hpp"

namespace cardguess {

double return_time_tail(int64_t n, int64_t s) {
    if (n < 1 || s < 0) {
        throw std::invalid_argument("return_time_tail: need n >= 1, s >= 0");
    }
    if (s >= n) return 0.0;
    double logtail = 0.0;
    for (int64_t i = 1; i <= s; ++i) {
        logtail += std::log1p(-(double)i / (double)n);
    }
    return std::exp(logtail);
}

ChainStats return_time_moments(int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("return_time_moments: n must be >= 1");
    }
    ChainStats out;
    out.n = n;
    KahanSum et, et2;
    double logtail = 0.0;
    double tail = 1.0; // s = 0
    for (int64_t s = 0; s < n; ++s) {
        et.add(tail);
        et2.add((double)(2 * s + 1) * tail);
        logtail += std::log1p(-(double)(s + 1) / (double)n);
        tail = std::exp(logtail);
        // remaining terms are bounded by n * tail * (2n+1); cut far below the
        // double epsilon of the accumulated sums
        if (tail < 1e-22 / (double)n) break;
    }
    out.et = et.value();
    out.et2 = et2.value();
    return out;
}

ChainStats simulate_excursions(int64_t n, uint64_t steps, RngStream& rng) {
    if (n < 1 || steps < 1) {
        throw std::invalid_argument("simulate_excursions: need n >= 1, steps >= 1");
    }
    ChainStats out;
    out.n = n;
    out.steps = steps;
    int64_t state = 1;
    uint64_t returns = 0;
    for (uint64_t i = 0; i < steps; ++i) {
        // reset with probability state/n, else advance
        if ((int64_t)rng.below((uint64_t)n) < state) {
            state = 1;
            ++returns;
        } else {
            ++state;
        }
    }
    out.excursions = returns;
    const ChainStats exact = return_time_moments(n);
    out.et = exact.et;
    out.et2 = exact.et2;
    return out;
}

int64_t count_max_appeared(const DeckSpec& spec, const CountsState& state) {
    check_state(spec, state);
    const int64_t min_remaining = *std::min_element(state.counts.begin(), state.counts.end());
    return std::count(state.counts.begin(), state.counts.end(), min_remaining);
}

MaxIncreaseEstimate max_increase_probability(const DeckSpec& spec,
                                             const CountsState& state, int64_t j) {
    check_state(spec, state);
    if (j < 0 || j > spec.n) {
        throw std::invalid_argument("max_increase_probability: j outside [0, n]");
    }
    if (state.t <= 0) {
        throw std::invalid_argument("max_increase_probability: no cards remain");
    }
    // k = maximal appeared count = m - min remaining; each of the j maximal
    // types has m - k copies left among the t remaining cards
    const int64_t min_remaining =
        *std::min_element(state.counts.begin(), state.counts.end());
    MaxIncreaseEstimate out;
    out.probability = (double)(min_remaining * j) / (double)state.t;
    out.chain_bound = (double)j / (double)spec.n;
    return out;
}

} // namespace cardguess
