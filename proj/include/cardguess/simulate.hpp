#ifndef CARDGUESS_SIMULATE_HPP
#define CARDGUESS_SIMULATE_HPP

#include <cstdint>
#include <string>

#include "cardguess/deck.hpp"
#include "cardguess/strategy.hpp"

namespace cardguess {

struct ScoreSummary {
    double mean = 0.0;
    double stderr_ = 0.0; // sample stddev / sqrt(reps)
    uint64_t reps = 0;
    uint64_t seed = 0;
    std::string strategy_id;
    DeckSpec spec;
};

// Plays one full game (nm rounds of guess, reveal, discard) and returns the
// number of correct guesses. Consumes rng draws in a fixed order: strategy
// first (if it is randomized), then the card draw.
int64_t play_game(const DeckSpec& spec, const StrategyConfig& strategy, RngStream& rng);

// Mean/stderr over `reps` independent games. Replication r always uses
// RngStream(seed, r), and scores are accumulated in exact integer arithmetic,
// so the result is bit-identical for fixed (seed, reps) no matter how many
// workers run or how replications are scheduled. workers <= 0 picks a default
// from CARDGUESS_WORKERS or hardware concurrency.
ScoreSummary estimate_score(const DeckSpec& spec, const StrategyConfig& strategy,
                            uint64_t reps, uint64_t seed, int workers = 0);

// Default worker count used when a caller passes workers <= 0.
int default_workers();

} // namespace cardguess

#endif
