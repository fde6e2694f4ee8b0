#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "cardguess/birthday.hpp"
#include "cardguess/deck.hpp"

using namespace cardguess;

TEST_CASE("return_time_tail product values") {
    CHECK(return_time_tail(10, 0) == 1.0);
    CHECK(return_time_tail(2, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(return_time_tail(2, 2) == 0.0);
    CHECK(return_time_tail(5, 7) == 0.0); // s >= n
    CHECK(return_time_tail(4, 2) ==
          doctest::Approx((1.0 - 1.0 / 4) * (1.0 - 2.0 / 4)).epsilon(1e-15));
    CHECK_THROWS(return_time_tail(0, 1));
    CHECK_THROWS(return_time_tail(3, -1));
}

TEST_CASE("classical birthday sum at n = 365") {
    // sum_{s>=0} prod_{i<=s}(1 - i/365) = 23.6166 (the chain's E[T]; the
    // people-count convention of the classical puzzle is this plus one)
    const auto stats = return_time_moments(365);
    CHECK(stats.et == doctest::Approx(23.61658).epsilon(1e-6));
}

TEST_CASE("return-time moments: degenerate chain and scaling bands") {
    const auto one = return_time_moments(1);
    CHECK(one.et == 1.0);
    CHECK(one.et2 == 1.0);

    const auto big = return_time_moments(10000);
    CHECK(big.et / 100.0 > 1.24);
    CHECK(big.et / 100.0 < 1.27);
    CHECK(big.et2 / 10000.0 > 1.9);
    CHECK(big.et2 / 10000.0 < 2.1);
    CHECK(big.et2 >= big.et * big.et); // second moment dominates the square
}

TEST_CASE("excursion simulation") {
    RngStream rng(8, 0);
    const auto deg = simulate_excursions(1, 1000, rng);
    CHECK(deg.excursions == 1000); // n=1 returns every step

    const auto sim = simulate_excursions(500, 200000, rng);
    CHECK(sim.excursions <= sim.steps);
    const double ratio = ((double)sim.excursions / (double)sim.steps) * sim.et;
    CHECK(ratio > 0.9);
    CHECK(ratio < 1.1);
}

TEST_CASE("max_increase_probability") {
    const DeckSpec spec(3, 4);
    // appeared counts (1,1,0): k = 1, two types maximal, 10 cards left
    const CountsState st{{3, 3, 4}, 10};
    SUBCASE("j = 0 gives probability 0") {
        const auto est = max_increase_probability(spec, st, 0);
        CHECK(est.probability == 0.0);
        CHECK(est.chain_bound == 0.0);
    }
    SUBCASE("matches the direct count of favorable cards") {
        CHECK(count_max_appeared(spec, st) == 2);
        const auto est = max_increase_probability(spec, st, 2);
        CHECK(est.probability == doctest::Approx(2.0 * 3.0 / 10.0).epsilon(1e-15));
        CHECK(est.chain_bound == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("argument validation") {
        CHECK_THROWS(max_increase_probability(spec, st, -1));
        CHECK_THROWS(max_increase_probability(spec, st, 4));
    }
}

TEST_CASE("probability never exceeds the chain bound on random reachable states") {
    RngStream rng(99, 0);
    const DeckSpec spec(6, 5);
    for (int rep = 0; rep < 300; ++rep) {
        CountsState st = new_state(spec);
        const int64_t drops = (int64_t)rng.below((uint64_t)(spec.cards() - 1));
        for (int64_t i = 0; i < drops; ++i) draw(st, rng);
        const int64_t j = count_max_appeared(spec, st);
        const auto est = max_increase_probability(spec, st, j);
        REQUIRE(est.probability <= est.chain_bound + 1e-12);
    }
}

TEST_CASE("saturated configuration: one-step increase frequency close to j/n") {
    // j types appeared k=1 times, the rest appeared 0 times, with m large so
    // the saturated bound j/n is nearly exact
    const int64_t n = 10, m = 1001, j = 3;
    const DeckSpec spec(n, m);
    CountsState base = new_state(spec);
    for (int64_t i = 0; i < j; ++i) {
        --base.counts[(size_t)i];
        --base.t;
    }
    RngStream rng(555, 0);
    const int64_t trials = 100000;
    int64_t increases = 0;
    for (int64_t i = 0; i < trials; ++i) {
        CountsState st = base;
        const int64_t card = draw(st, rng);
        increases += (card < j); // drawing a maximal-appeared type bumps the max
    }
    const double phat = (double)increases / (double)trials;
    const double target = (double)j / (double)n;
    const double sigma = std::sqrt(target * (1 - target) / (double)trials);
    CHECK(std::abs(phat - target) < 3.0 * sigma);
}

TEST_CASE("domination: empirical max-appeared increase rate <= chain reset rate") {
    // the coupling at the heart of the chain argument, on full games
    for (const int64_t n : {10, 20}) {
        for (const int64_t m : {10, 20}) {
            const DeckSpec spec(n, m);
            std::map<int64_t, std::pair<int64_t, int64_t>> by_j; // j -> (increases, visits)
            RngStream rng(4242 + n * 100 + m, 0);
            for (int game = 0; game < 300; ++game) {
                CountsState st = new_state(spec);
                int64_t min_remaining = spec.m;
                while (st.t > 0) {
                    const int64_t j = count_max_appeared(spec, st);
                    const int64_t card = draw(st, rng);
                    auto& [inc, vis] = by_j[j];
                    ++vis;
                    if (st.counts[(size_t)card] < min_remaining) {
                        min_remaining = st.counts[(size_t)card];
                        ++inc;
                    }
                }
            }
            for (const auto& [j, iv] : by_j) {
                const auto [inc, vis] = iv;
                if (vis < 200) continue;
                const double phat = (double)inc / (double)vis;
                const double bound = (double)j / (double)n;
                const double sigma = std::sqrt(std::max(bound * (1 - bound), 1e-9) /
                                               (double)vis);
                REQUIRE(phat <= bound + 3.0 * sigma);
            }
        }
    }
}

TEST_CASE("tail sandwich around exp(-s^2/2n)") {
    for (const int64_t n : {100, 10000, 100000}) {
        const int64_t s_max = (int64_t)std::pow((double)n, 2.0 / 3.0);
        const int64_t s_root = (int64_t)std::ceil(std::sqrt((double)n));
        for (int64_t s = 1; s <= s_max; ++s) {
            const double tail = return_time_tail(n, s);
            const double upper = std::exp(-(double)(s * s) / (2.0 * (double)n));
            REQUIRE(tail < upper); // strict for every s >= 1
            if (s >= s_root) {
                // the explicit constant-1 lower bound holds from sqrt(n) up
                // (below that scale the neglected s/2n term dominates s^3/n^2)
                const double lower = std::exp(-(double)(s * s) / (2.0 * (double)n) -
                                              (double)(s * s * s) / ((double)n * (double)n));
                REQUIRE(lower <= tail);
            }
        }
    }
}
