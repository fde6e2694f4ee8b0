#include <doctest.h>

#include <set>
#include <vector>

#include "cardguess/rng.hpp"

using cardguess::RngStream;

TEST_CASE("same (seed, stream) reproduces the same sequence") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("different stream indices give different sequences") {
    RngStream a(42, 0);
    RngStream b(42, 1);
    int agree = 0;
    for (int i = 0; i < 64; ++i) {
        agree += (a.next_u64() == b.next_u64());
    }
    CHECK(agree == 0);
}

TEST_CASE("below() respects the bound and hits every value") {
    RngStream rng(1, 0);
    std::set<uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const uint64_t v = rng.below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("next_double lies in [0, 1)") {
    RngStream rng(99, 3);
    double mean = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        const double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        mean += u;
    }
    mean /= trials;
    // stderr of the mean of U[0,1) over 1e5 draws is ~0.0009
    CHECK(std::abs(mean - 0.5) < 0.005);
}
