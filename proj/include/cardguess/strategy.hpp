#ifndef CARDGUESS_STRATEGY_HPP
#define CARDGUESS_STRATEGY_HPP

#include <string>

#include "cardguess/deck.hpp"
#include "cardguess/rng.hpp"

namespace cardguess {

enum class StrategyKind { fixed, greedy, uniform_random };

enum class Tiebreak { lowest_index, random };

struct StrategyConfig {
    StrategyKind kind = StrategyKind::greedy;
    Tiebreak tiebreak = Tiebreak::lowest_index; // greedy only
};

// Always guesses type 0, regardless of the counts. Guaranteed m correct
// guesses over a full game.
int64_t guess_fixed(const CountsState& state);

// Guesses a type with the most copies remaining (equivalently, fewest
// appearances so far). rng is consulted only for Tiebreak::random.
int64_t guess_greedy(const CountsState& state, Tiebreak tiebreak,
                     RngStream* rng = nullptr);

// Uniform over the types that still have at least one copy left.
int64_t guess_uniform(const CountsState& state, RngStream& rng);

int64_t guess(const CountsState& state, const StrategyConfig& cfg, RngStream& rng);

std::string to_string(StrategyKind kind);
StrategyKind parse_strategy(const std::string& name);
Tiebreak parse_tiebreak(const std::string& name);

} // namespace cardguess

#endif
