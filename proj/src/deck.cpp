#include "cardguess/deck.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cardguess {

DeckSpec::DeckSpec(int64_t n_, int64_t m_) : n(n_), m(m_) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("DeckSpec: n and m must be >= 1");
    }
    if ((unsigned __int128)n * (unsigned __int128)m > kMaxDeckCards) {
        throw std::invalid_argument("DeckSpec: deck size n*m exceeds 2^40");
    }
}

CountsState new_state(const DeckSpec& spec) {
    DeckSpec checked(spec.n, spec.m); // re-validate copies built by aggregate init
    CountsState s;
    s.counts.assign((size_t)checked.n, checked.m);
    s.t = checked.cards();
    return s;
}

void check_state(const DeckSpec& spec, const CountsState& state) {
    if ((int64_t)state.counts.size() != spec.n) {
        throw std::invalid_argument("CountsState: counts length != n");
    }
    int64_t sum = 0;
    for (int64_t c : state.counts) {
        if (c < 0 || c > spec.m) {
            throw std::invalid_argument("CountsState: count outside [0, m]");
        }
        sum += c;
    }
    if (sum != state.t) {
        throw std::invalid_argument("CountsState: sum(counts) != t");
    }
}

int64_t draw(CountsState& state, RngStream& rng) {
    if (state.t <= 0) {
        throw std::logic_error("draw: deck is empty");
    }
    int64_t u = (int64_t)rng.below((uint64_t)state.t);
    for (size_t i = 0; i < state.counts.size(); ++i) {
        if (u < state.counts[i]) {
            --state.counts[i];
            --state.t;
            return (int64_t)i;
        }
        u -= state.counts[i];
    }
    throw std::logic_error("draw: counts inconsistent with t"); // unreachable on valid state
}

CountsState canonicalize(const CountsState& state) {
    CountsState out = state;
    std::sort(out.counts.begin(), out.counts.end(), std::greater<int64_t>());
    return out;
}

} // namespace cardguess
