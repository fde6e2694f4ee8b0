#include "cardguess/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

namespace cardguess {

namespace {

// ---------------------------------------------------------------------------
// Canonical-state DP
// ---------------------------------------------------------------------------

// States are non-increasing count vectors. Small decks pack into a u64 key
// (b bits per type); large-n/small-m decks fall back to a byte-string key.
struct StateCodec {
    int64_t n;
    int bits;
    bool packed;

    StateCodec(int64_t n_, int64_t m) : n(n_) {
        bits = std::bit_width((uint64_t)m);
        packed = (int64_t)bits * n <= 64;
    }

    uint64_t pack(const std::vector<int64_t>& c) const {
        uint64_t key = 0;
        for (int64_t v : c) key = (key << bits) | (uint64_t)v;
        return key;
    }

    std::string pack_str(const std::vector<int64_t>& c) const {
        std::string key;
        key.resize(c.size() * sizeof(int64_t));
        std::memcpy(key.data(), c.data(), key.size());
        return key;
    }
};

// Enumerates all non-increasing vectors of length n with entries in [0, m]
// summing to s, invoking fn for each.
template <class Fn>
void for_each_partition(int64_t n, int64_t m, int64_t s, std::vector<int64_t>& buf, Fn&& fn) {
    auto rec = [&](auto&& self, int64_t pos, int64_t remaining, int64_t bound) -> void {
        if (pos == n) {
            if (remaining == 0) fn(buf);
            return;
        }
        const int64_t left = n - pos;
        int64_t hi = std::min(bound, remaining);
        // need remaining - v <= (left-1) * v  =>  v >= remaining/left
        int64_t lo = (remaining + left - 1) / left;
        for (int64_t v = hi; v >= lo; --v) {
            buf[(size_t)pos] = v;
            self(self, pos + 1, remaining - v, v);
        }
    };
    rec(rec, 0, s, m);
}

// Value recursion, one t-level at a time (children live one level below, so
// only two levels of memo are alive at once). V is double or mpq_class.
template <class V, class Key, class Packer>
V dp_run(const DeckSpec& spec, Packer&& pack) {
    const int64_t n = spec.n;
    const int64_t m = spec.m;
    const int64_t nm = n * m;

    std::unordered_map<Key, V> prev;
    std::vector<int64_t> buf((size_t)n);
    std::vector<int64_t> child((size_t)n);
    for_each_partition(n, m, 0, buf, [&](const std::vector<int64_t>& c) {
        prev.emplace(pack(c), V(0));
    });

    V result(0);
    for (int64_t t = 1; t <= nm; ++t) {
        std::unordered_map<Key, V> cur;
        cur.reserve(prev.size() + prev.size() / 2);
        for_each_partition(n, m, t, buf, [&](const std::vector<int64_t>& c) {
            V acc(0);
            child = c;
            size_t i = 0;
            while (i < c.size()) {
                // group of equal counts; decrementing the last member keeps
                // the vector non-increasing
                size_t j = i;
                while (j + 1 < c.size() && c[j + 1] == c[i]) ++j;
                if (c[i] > 0) {
                    --child[j];
                    auto it = prev.find(pack(child));
                    // weight: (#types in group) * count, over t
                    acc += V((long)((int64_t)(j - i + 1) * c[i])) * it->second;
                    ++child[j];
                }
                i = j + 1;
            }
            V value = (V((long)c[0]) + acc) / V((long)t);
            if (t == nm) result = value;
            cur.emplace(pack(c), std::move(value));
        });
        prev = std::move(cur);
    }
    return result;
}

template <class V>
V dp_dispatch(const DeckSpec& spec) {
    StateCodec codec(spec.n, spec.m);
    if (codec.packed) {
        return dp_run<V, uint64_t>(spec, [&](const std::vector<int64_t>& c) {
            return codec.pack(c);
        });
    }
    return dp_run<V, std::string>(spec, [&](const std::vector<int64_t>& c) {
        return codec.pack_str(c);
    });
}

void check_state_cap(const DeckSpec& spec, uint64_t cap) {
    mpz_class states = canonical_state_count(spec);
    if (states > (unsigned long)cap) {
        throw CapacityError("exact: canonical state count " + states.get_str() +
                            " exceeds the state cap " + std::to_string(cap));
    }
}

// ---------------------------------------------------------------------------
// Linearity decomposition via bounded-count polynomials
// ---------------------------------------------------------------------------

using Poly = std::vector<mpz_class>;

Poly poly_mul_trunc(const Poly& a, const Poly& b, size_t maxdeg) {
    Poly out(std::min(a.size() + b.size() - 1, maxdeg + 1));
    for (size_t i = 0; i < a.size() && i <= maxdeg; ++i) {
        if (a[i] == 0) continue;
        const size_t jmax = std::min(b.size(), maxdeg + 1 - i);
        for (size_t j = 0; j < jmax; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// (sum_{j=0}^{k} C(m,j) x^j)^n truncated at degree maxdeg.
Poly bounded_count_poly(int64_t n, int64_t m, int64_t k, size_t maxdeg) {
    Poly base((size_t)k + 1);
    mpz_class c = 1;
    base[0] = c;
    for (int64_t j = 1; j <= k; ++j) {
        c = c * (m - j + 1) / j;
        base[(size_t)j] = c;
    }
    Poly result{mpz_class(1)};
    Poly sq = std::move(base);
    int64_t e = n;
    while (e > 0) {
        if (e & 1) result = poly_mul_trunc(result, sq, maxdeg);
        e >>= 1;
        if (e) sq = poly_mul_trunc(sq, sq, maxdeg);
    }
    return result;
}

// E[max X(t)] = m - sum_{k=0}^{m-1} P(max <= k), with P(max <= k) read off the
// k-th polynomial's t-coefficient over C(nm, t).
mpq_class emax_from_polys(const DeckSpec& spec, const std::vector<Poly>& polys, int64_t t) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), (unsigned long)spec.cards(), (unsigned long)t);
    mpq_class emax(spec.m);
    for (const Poly& poly : polys) {
        if ((size_t)t < poly.size() && poly[(size_t)t] != 0) {
            mpq_class pmaxle(poly[(size_t)t], binom);
            pmaxle.canonicalize();
            emax -= pmaxle;
        }
    }
    return emax;
}

std::vector<Poly> all_bounded_polys(const DeckSpec& spec, size_t maxdeg) {
    std::vector<Poly> polys;
    polys.reserve((size_t)spec.m);
    for (int64_t k = 0; k < spec.m; ++k) {
        polys.push_back(bounded_count_poly(spec.n, spec.m, k, maxdeg));
    }
    return polys;
}

} // namespace

mpz_class canonical_state_count(const DeckSpec& spec) {
    mpz_class states;
    mpz_bin_uiui(states.get_mpz_t(), (unsigned long)(spec.n + spec.m), (unsigned long)spec.n);
    return states;
}

ExactValue exact_value_dp(const DeckSpec& spec, const ExactOptions& opts) {
    DeckSpec checked(spec.n, spec.m);
    check_state_cap(checked, opts.state_cap);

    ExactValue out;
    out.method = ExactMethod::dp;
    out.spec = checked;
    if (opts.rational) {
        mpq_class v = dp_dispatch<mpq_class>(checked);
        out.value = v.get_d();
        out.exact = std::move(v);
    } else {
        out.value = dp_dispatch<double>(checked);
    }
    return out;
}

double max_remaining_expectation(const DeckSpec& spec, int64_t t) {
    return max_remaining_expectation_exact(spec, t).get_d();
}

mpq_class max_remaining_expectation_exact(const DeckSpec& spec, int64_t t) {
    DeckSpec checked(spec.n, spec.m);
    if (t < 1 || t > checked.cards()) {
        throw std::invalid_argument("max_remaining_expectation: t out of range");
    }
    // degree capped at t: higher coefficients can never be read
    std::vector<Poly> polys = all_bounded_polys(checked, (size_t)t);
    return emax_from_polys(checked, polys, t);
}

std::pair<MaxProfile, ExactValue> score_decomposition(const DeckSpec& spec,
                                                      const ExactOptions& opts) {
    DeckSpec checked(spec.n, spec.m);
    const int64_t nm = checked.cards();
    std::vector<Poly> polys = all_bounded_polys(checked, (size_t)nm);

    MaxProfile profile;
    profile.spec = checked;
    profile.emax.resize((size_t)nm);

    ExactValue value;
    value.method = ExactMethod::linearity;
    value.spec = checked;

    if (opts.rational) {
        mpq_class total(0);
        for (int64_t t = 1; t <= nm; ++t) {
            mpq_class emax = emax_from_polys(checked, polys, t);
            profile.emax[(size_t)t - 1] = emax.get_d();
            total += emax / mpq_class((long)t);
        }
        value.value = total.get_d();
        value.exact = std::move(total);
    } else {
        // compensated (Kahan) sum of the per-t terms
        double total = 0.0, comp = 0.0;
        for (int64_t t = 1; t <= nm; ++t) {
            double emax = emax_from_polys(checked, polys, t).get_d();
            profile.emax[(size_t)t - 1] = emax;
            double term = emax / (double)t - comp;
            double next = total + term;
            comp = (next - total) - term;
            total = next;
        }
        value.value = total;
    }
    return {std::move(profile), std::move(value)};
}

} // namespace cardguess
