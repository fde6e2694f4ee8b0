#ifndef CARDGUESS_RNG_HPP
#define CARDGUESS_RNG_HPP

#include <cstdint>

namespace cardguess {

// Counter-seeded xoshiro256++ stream. Streams are addressed by
// (seed, stream_index); the same pair produces the same sequence on every
// platform because only 64-bit integer arithmetic is involved.
class RngStream {
public:
    RngStream(uint64_t seed, uint64_t stream_index) noexcept {
        // splitmix64 over a seed/stream mix, per Blackman & Vigna's
        // recommendation for initializing xoshiro state.
        uint64_t x = seed ^ (stream_index * 0x9E3779B97F4A7C15ULL + 0x6A09E667F3BCC909ULL);
        for (auto& word : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            word = z ^ (z >> 31);
        }
        state_[0] |= 1; // xoshiro must not start from all-zero state
    }

    uint64_t next_u64() noexcept {
        uint64_t* s = state_;
        const uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        const uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound) via Lemire's multiply-shift rejection.
    uint64_t below(uint64_t bound) noexcept {
        unsigned __int128 mul = (unsigned __int128)next_u64() * bound;
        uint64_t low = (uint64_t)mul;
        if (low < bound) {
            const uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                mul = (unsigned __int128)next_u64() * bound;
                low = (uint64_t)mul;
            }
        }
        return (uint64_t)(mul >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() noexcept {
        return (next_u64() >> 11) * 0x1.0p-53;
    }

    // Bernoulli(p) draw; consumes one next_double().
    bool bernoulli(double p) noexcept { return next_double() < p; }

private:
    static uint64_t rotl(uint64_t v, int k) noexcept {
        return (v << k) | (v >> (64 - k));
    }

    uint64_t state_[4];
};

} // namespace cardguess

#endif
