#include "cardguess/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace cardguess {

namespace {

// Fenwick tree over per-type weights supporting O(log n) weighted selection.
// Padded to a power of two so the hot descend runs branch-free.
class Fenwick {
public:
    void init(int64_t n, int64_t weight) {
        pad_ = int64_t{1};
        while (pad_ < n) pad_ <<= 1;
        tree_.assign((size_t)pad_ + 1, 0);
        for (int64_t i = 1; i <= pad_; ++i) {
            if (i <= n) tree_[(size_t)i] += weight;
            int64_t j = i + (i & -i);
            if (j <= pad_) tree_[(size_t)j] += tree_[(size_t)i];
        }
    }

    void add(int64_t idx, int64_t delta) {
        for (int64_t i = idx + 1; i <= pad_; i += i & -i) {
            tree_[(size_t)i] += delta;
        }
    }

    // Smallest index i with prefix_sum(0..i) > u (0-based type index);
    // requires u < total weight.
    int64_t find(int64_t u) const {
        int64_t pos = 0;
        for (int64_t step = pad_; step > 0; step >>= 1) {
            const int64_t v = tree_[(size_t)(pos + step)];
            const bool go = v <= u;
            pos += go ? step : 0;
            u -= go ? v : 0;
        }
        return pos; // 0-based
    }

    // find() fused with a decrement of the selected index: the descend's
    // non-advanced candidate nodes are exactly the nodes covering the target.
    int64_t take_one(int64_t u) {
        int64_t pos = 0;
        for (int64_t step = pad_; step > 0; step >>= 1) {
            const int64_t next = pos + step;
            const int64_t v = tree_[(size_t)next];
            const bool go = v <= u;
            pos = go ? next : pos;
            u -= go ? v : 0;
            tree_[(size_t)next] = v - (go ? 0 : 1);
        }
        return pos;
    }

private:
    std::vector<int64_t> tree_;
    int64_t pad_ = 1;
};

// Per-worker game state, reused across replications to avoid reallocation.
class GameRunner {
public:
    GameRunner(const DeckSpec& spec, const StrategyConfig& strategy)
        : spec_(spec), strategy_(strategy) {}

    int64_t run(RngStream& rng) {
        const int64_t n = spec_.n;
        const int64_t m = spec_.m;
        counts_.assign((size_t)n, m);
        t_ = n * m;
        weights_.init(n, m);
        maxval_ = m;
        argmax_ = 0;
        track_argmax_ = strategy_.kind == StrategyKind::greedy &&
                        strategy_.tiebreak == Tiebreak::lowest_index;
        if (strategy_.kind == StrategyKind::uniform_random) {
            alive_.init(n, 1);
            alive_count_ = n;
        }

        int64_t score = 0;
        for (int64_t t = n * m; t > 0; --t) {
            const int64_t g = pick_guess(rng);
            const int64_t u = (int64_t)rng.below((uint64_t)t);
            const int64_t card = weights_.take_one(u);
            --counts_[(size_t)card];
            --t_;
            if (track_argmax_ && card == argmax_) {
                // Counts never grow, so the lowest-index argmax can only move
                // when the tracked type itself is drawn (a correct guess under
                // greedy play): rescan, expected O(score) rescans per game.
                maxval_ = counts_[0];
                argmax_ = 0;
                for (int64_t i = 1; i < n; ++i) {
                    if (counts_[(size_t)i] > maxval_) {
                        maxval_ = counts_[(size_t)i];
                        argmax_ = i;
                    }
                }
            }
            if (strategy_.kind == StrategyKind::uniform_random &&
                counts_[(size_t)card] == 0) {
                alive_.add(card, -1);
                --alive_count_;
            }
            score += (g == card);
        }
        return score;
    }

private:
    int64_t pick_guess(RngStream& rng) {
        switch (strategy_.kind) {
            case StrategyKind::fixed:
                return 0;
            case StrategyKind::greedy:
                if (strategy_.tiebreak == Tiebreak::lowest_index) {
                    return argmax_;
                }
                // Slow path; matches the library strategy call exactly,
                // including its rng consumption.
                return guess_greedy(CountsState{counts_, t_}, Tiebreak::random, &rng);
            case StrategyKind::uniform_random:
                return alive_.find((int64_t)rng.below((uint64_t)alive_count_));
        }
        throw std::logic_error("unknown strategy");
    }

    DeckSpec spec_;
    StrategyConfig strategy_;
    std::vector<int64_t> counts_;
    int64_t t_ = 0;
    Fenwick weights_;
    Fenwick alive_;
    int64_t alive_count_ = 0;
    int64_t maxval_ = 0;
    int64_t argmax_ = 0;
    bool track_argmax_ = false;
};

struct Accum {
    unsigned __int128 sum = 0;
    unsigned __int128 sumsq = 0;
};

} // namespace

int64_t play_game(const DeckSpec& spec, const StrategyConfig& strategy, RngStream& rng) {
    DeckSpec checked(spec.n, spec.m);
    GameRunner runner(checked, strategy);
    return runner.run(rng);
}

int default_workers() {
    if (const char* env = std::getenv("CARDGUESS_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (int)hw;
}

ScoreSummary estimate_score(const DeckSpec& spec, const StrategyConfig& strategy,
                            uint64_t reps, uint64_t seed, int workers) {
    DeckSpec checked(spec.n, spec.m);
    if (reps < 2) {
        throw std::invalid_argument("estimate_score: reps must be >= 2");
    }
    int w = workers > 0 ? workers : default_workers();
    w = (int)std::min<uint64_t>((uint64_t)w, reps);

    std::vector<Accum> acc((size_t)w);
    auto work = [&](int wi) {
        const uint64_t lo = reps * (uint64_t)wi / (uint64_t)w;
        const uint64_t hi = reps * (uint64_t)(wi + 1) / (uint64_t)w;
        GameRunner runner(checked, strategy);
        Accum a;
        for (uint64_t r = lo; r < hi; ++r) {
            RngStream rng(seed, r);
            const uint64_t s = (uint64_t)runner.run(rng);
            a.sum += s;
            a.sumsq += (unsigned __int128)s * s;
        }
        acc[(size_t)wi] = a;
    };

    if (w == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve((size_t)w);
        for (int wi = 0; wi < w; ++wi) threads.emplace_back(work, wi);
        for (auto& th : threads) th.join();
    }

    Accum total;
    for (const auto& a : acc) {
        total.sum += a.sum;
        total.sumsq += a.sumsq;
    }

    // Scores are integers, so the moments are exact and the reported mean and
    // stderr do not depend on the worker partition.
    const long double sum = (long double)total.sum;
    const long double sumsq = (long double)total.sumsq;
    const long double r = (long double)reps;
    long double var = (sumsq - sum * sum / r) / (r - 1.0L);
    if (var < 0) var = 0;

    ScoreSummary out;
    out.mean = (double)(sum / r);
    out.stderr_ = (double)std::sqrt((double)(var / r));
    out.reps = reps;
    out.seed = seed;
    out.strategy_id = to_string(strategy.kind);
    out.spec = checked;
    return out;
}

} // namespace cardguess
