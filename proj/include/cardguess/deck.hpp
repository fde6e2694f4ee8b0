#ifndef CARDGUESS_DECK_HPP
#define CARDGUESS_DECK_HPP

#include <cstdint>
#include <vector>

#include "cardguess/rng.hpp"

namespace cardguess {

// Largest supported deck; far above anything a desk-scale study needs but
// keeps nm (and score sums) comfortably inside 64-bit arithmetic.
inline constexpr uint64_t kMaxDeckCards = uint64_t{1} << 40;

// A deck of n distinct types, each appearing exactly m times.
struct DeckSpec {
    int64_t n = 0; // number of distinct types
    int64_t m = 0; // copies per type

    DeckSpec() = default;
    DeckSpec(int64_t n_, int64_t m_);

    int64_t cards() const { return n * m; }
};

// Remaining-count view of the deck: counts[i] copies of type i left,
// t cards left in total. Invariant: sum(counts) == t, 0 <= counts[i] <= m.
struct CountsState {
    std::vector<int64_t> counts;
    int64_t t = 0;

    bool operator==(const CountsState&) const = default;
};

// Full deck for the given spec.
CountsState new_state(const DeckSpec& spec);

// Validates the CountsState invariants against a spec; throws on violation.
void check_state(const DeckSpec& spec, const CountsState& state);

// Removes one uniformly random card: returns its type (drawn with
// probability counts[i]/t) and decrements the state in place.
int64_t draw(CountsState& state, RngStream& rng);

// Counts sorted in non-increasing order; the game value is symmetric under
// type relabeling, so this is a valid memoization key.
CountsState canonicalize(const CountsState& state);

} // namespace cardguess

#endif
