#include "cardguess/strategy.hpp"

#include <stdexcept>
#include <vector>

namespace cardguess {

namespace {
void require_nonempty(const CountsState& state) {
    if (state.t <= 0) {
        throw std::logic_error("strategy: deck is empty");
    }
}
} // namespace

int64_t guess_fixed(const CountsState& state) {
    require_nonempty(state);
    return 0;
}

int64_t guess_greedy(const CountsState& state, Tiebreak tiebreak, RngStream* rng) {
    require_nonempty(state);
    int64_t best = 0;
    for (size_t i = 1; i < state.counts.size(); ++i) {
        if (state.counts[i] > state.counts[(size_t)best]) {
            best = (int64_t)i;
        }
    }
    if (tiebreak == Tiebreak::lowest_index) {
        return best;
    }
    if (rng == nullptr) {
        throw std::invalid_argument("guess_greedy: random tiebreak needs an RngStream");
    }
    const int64_t maxcount = state.counts[(size_t)best];
    std::vector<int64_t> argmax;
    for (size_t i = 0; i < state.counts.size(); ++i) {
        if (state.counts[i] == maxcount) {
            argmax.push_back((int64_t)i);
        }
    }
    return argmax[rng->below(argmax.size())];
}

int64_t guess_uniform(const CountsState& state, RngStream& rng) {
    require_nonempty(state);
    int64_t alive = 0;
    for (int64_t c : state.counts) {
        alive += (c > 0);
    }
    // k-th (in index order) type with a positive count
    int64_t k = (int64_t)rng.below((uint64_t)alive);
    for (size_t i = 0; i < state.counts.size(); ++i) {
        if (state.counts[i] > 0 && k-- == 0) {
            return (int64_t)i;
        }
    }
    throw std::logic_error("guess_uniform: no positive count"); // unreachable
}

int64_t guess(const CountsState& state, const StrategyConfig& cfg, RngStream& rng) {
    switch (cfg.kind) {
        case StrategyKind::fixed:
            return guess_fixed(state);
        case StrategyKind::greedy:
            return guess_greedy(state, cfg.tiebreak, &rng);
        case StrategyKind::uniform_random:
            return guess_uniform(state, rng);
    }
    throw std::logic_error("guess: unknown strategy");
}

std::string to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::fixed: return "fixed";
        case StrategyKind::greedy: return "greedy";
        case StrategyKind::uniform_random: return "uniform";
    }
    return "?";
}

StrategyKind parse_strategy(const std::string& name) {
    if (name == "fixed") return StrategyKind::fixed;
    if (name == "greedy") return StrategyKind::greedy;
    if (name == "uniform") return StrategyKind::uniform_random;
    throw std::invalid_argument("unknown strategy: " + name);
}

Tiebreak parse_tiebreak(const std::string& name) {
    if (name == "lowest") return Tiebreak::lowest_index;
    if (name == "random") return Tiebreak::random;
    throw std::invalid_argument("unknown tiebreak: " + name);
}

} // namespace cardguess
