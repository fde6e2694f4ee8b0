#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "cardguess/binomial.hpp"
#include "cardguess/exact.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using namespace cardguess;

TEST_CASE("indep_max_expectation: degenerate and pinned values") {
    CHECK(indep_max_expectation(1, 2, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(indep_max_expectation(3, 7, 1.0) == 7.0);
    CHECK(indep_max_expectation(3, 7, 0.0) == 0.0);
    // max of two fair Bernoullis: 1 - (1/2)^2
    CHECK(indep_max_expectation(2, 1, 0.5) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("indep_max_expectation matches a direct long-double enumeration") {
    for (int64_t n : {1, 2, 5, 1000, 250000}) {
        for (int64_t m : {1, 4, 19}) {
            for (double p : {0.02, 0.3, 0.5, 0.9, 0.999}) {
                const double fast = indep_max_expectation(n, m, p);
                const double slow = oracles::emax_binomial_direct(n, m, p);
                REQUIRE(fast == doctest::Approx(slow).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("E[max] is non-decreasing in n and p") {
    const std::vector<int64_t> ns = {1, 2, 4, 16, 256, 100000};
    const std::vector<double> ps = {0.05, 0.2, 0.5, 0.8, 0.97};
    for (size_t i = 0; i + 1 < ns.size(); ++i) {
        for (double p : ps) {
            CHECK(indep_max_expectation(ns[i], 24, p) <=
                  indep_max_expectation(ns[i + 1], 24, p) + 1e-12);
        }
    }
    for (int64_t n : ns) {
        for (size_t i = 0; i + 1 < ps.size(); ++i) {
            CHECK(indep_max_expectation(n, 24, ps[i]) <=
                  indep_max_expectation(n, 24, ps[i + 1]) + 1e-12);
        }
    }
}

TEST_CASE("s_tilde: exact sums on tiny decks") {
    SUBCASE("single type is exactly m") {
        for (int64_t m : {1, 3, 8}) {
            const auto sv = s_tilde(DeckSpec(1, m), SurrogateMode::exact_sum);
            CHECK(sv.value == doctest::Approx((double)m).epsilon(1e-12));
        }
    }
    SUBCASE("n=2, m=1: 0.75/1 + 1.0/2 = 1.25; gap to S = 1.5 is 0.25") {
        const auto sv = s_tilde(DeckSpec(2, 1), SurrogateMode::exact_sum);
        CHECK(sv.value == doctest::Approx(1.25).epsilon(1e-12));
    }
    SUBCASE("n=m=4 within the surrogate-gap bound shape, trial constant 2") {
        const auto sv = s_tilde(DeckSpec(4, 4), SurrogateMode::exact_sum);
        const auto exact = exact_value_dp(DeckSpec(4, 4));
        CHECK(std::abs(exact.value - sv.value) <= 2.0 * (std::sqrt(4.0) + std::log(4.0)));
    }
}

TEST_CASE("s_tilde caps and cap errors") {
    SurrogateOptions opts;
    opts.sum_cap = 10;
    CHECK_THROWS_AS(s_tilde(DeckSpec(4, 4), SurrogateMode::exact_sum, opts), CapacityError);
    CHECK_THROWS_AS(s_tilde(DeckSpec(4, 4), SurrogateMode::quadrature,
                            SurrogateOptions{.grid_size = 16}),
                    std::invalid_argument);
}

TEST_CASE("quadrature mode tracks the exact sum and refines cleanly") {
    for (const auto& [n, m] : std::vector<std::pair<int64_t, int64_t>>{
             {40, 40}, {100, 25}, {25, 100}}) {
        const double exact = s_tilde(DeckSpec(n, m), SurrogateMode::exact_sum).value;
        const auto quad =
            s_tilde(DeckSpec(n, m), SurrogateMode::quadrature, SurrogateOptions{.grid_size = 512});
        const double gap = exact - (double)m;
        CHECK(std::abs(quad.value - exact) < 0.005 * gap);
        CHECK(quad.refinement_error < 0.005 * gap);
        CHECK(quad.grid_size == 512);
    }
}

TEST_CASE("exact sum is deterministic across worker counts") {
    SurrogateOptions w1{.workers = 1};
    SurrogateOptions w7{.workers = 7};
    CHECK(s_tilde(DeckSpec(30, 11), SurrogateMode::exact_sum, w1).value ==
          s_tilde(DeckSpec(30, 11), SurrogateMode::exact_sum, w7).value);
}

TEST_CASE("conditional_type_pmf does not depend on the representation's p") {
    // the conditional law is the same for every representation p
    for (int64_t m : {1, 2, 3}) {
        for (int64_t r : {1, 2, 4}) {
            for (int64_t s = 0; s <= r * m; ++s) {
                const auto base = conditional_type_pmf(m, r, s, 0.5);
                for (double p : {0.17, 0.83, 0.02}) {
                    const auto other = conditional_type_pmf(m, r, s, p);
                    for (size_t j = 0; j < base.size(); ++j) {
                        REQUIRE(other[j] == doctest::Approx(base[j]).epsilon(1e-12));
                    }
                }
            }
        }
    }
}

TEST_CASE("sampler law equals the hypergeometric pmf for nm <= 12") {
    for (const auto& [n, m] : std::vector<std::pair<int64_t, int64_t>>{
             {2, 2}, {3, 2}, {2, 3}, {4, 3}, {6, 2}, {3, 4}, {12, 1}}) {
        const DeckSpec spec(n, m);
        for (int64_t t = 1; t <= spec.cards(); ++t) {
            const auto atoms = oracles::hypergeometric_pmf(spec, t);
            double law_total = 0.0;
            for (const auto& atom : atoms) {
                // sequential product of the conditional laws for this tuple
                double law = 1.0;
                int64_t s = t;
                for (int64_t i = 0; i < n; ++i) {
                    const auto pmf = conditional_type_pmf(m, n - i, s, (double)t / spec.cards());
                    law *= pmf[(size_t)atom.counts[(size_t)i]];
                    s -= atom.counts[(size_t)i];
                }
                REQUIRE(law == doctest::Approx(atom.prob.get_d()).epsilon(1e-12));
                law_total += law;
            }
            REQUIRE(law_total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("conditional samples: support, sum, and small-case frequencies") {
    RngStream rng(2718, 0);
    SUBCASE("n=2, m=1, t=1: (1,0) and (0,1) each with probability 1/2") {
        std::vector<int64_t> hits(2, 0);
        const int trials = 100000;
        for (int i = 0; i < trials; ++i) {
            const auto v = conditional_sample(DeckSpec(2, 1), 1, rng);
            REQUIRE(v[0] + v[1] == 1);
            ++hits[(size_t)v[0]];
        }
        CHECK(teststats::chi2_test(hits, {0.5, 0.5}, trials) > 1e-3);
    }
    SUBCASE("outputs always sum to t with entries in [0, m]") {
        const DeckSpec spec(5, 3);
        for (int64_t t = 1; t <= spec.cards(); ++t) {
            for (int rep = 0; rep < 50; ++rep) {
                const auto v = conditional_sample(spec, t, rng);
                int64_t sum = 0;
                for (int64_t x : v) {
                    REQUIRE(x >= 0);
                    REQUIRE(x <= spec.m);
                    sum += x;
                }
                REQUIRE(sum == t);
            }
        }
    }
}

TEST_CASE("chi-square of sampled tuples against the hypergeometric law") {
    const DeckSpec spec(3, 2);
    const int64_t t = 3;
    const auto atoms = oracles::hypergeometric_pmf(spec, t);
    std::map<std::vector<int64_t>, size_t> index;
    std::vector<double> probs;
    for (const auto& atom : atoms) {
        index[atom.counts] = probs.size();
        probs.push_back(atom.prob.get_d());
    }
    std::vector<int64_t> observed(probs.size(), 0);
    RngStream rng(31415, 0);
    const int64_t trials = 100000;
    for (int64_t i = 0; i < trials; ++i) {
        ++observed[index.at(conditional_sample(spec, t, rng))];
    }
    CHECK(teststats::chi2_test(observed, probs, trials) > 1e-3);
}

TEST_CASE("feller_gap basics") {
    CHECK(feller_gap(1, 100, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(feller_gap(10, 10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(feller_gap(10, 10, 1.0), std::invalid_argument);
    // O(1) band at a small size (the acceptance suite runs the big grid)
    const double gap = feller_gap(100, 100, 0.5);
    CHECK(gap > -2.0);
    CHECK(gap < 1.0);
}

TEST_CASE("BinomialSpec validation") {
    CHECK_THROWS_AS(BinomialSpec(0, 3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(BinomialSpec(3, 3, 1.5), std::invalid_argument);
    CHECK_NOTHROW(BinomialSpec(3, 3, 1.0));
}
