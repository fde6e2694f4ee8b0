#include "cardguess/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cardguess/mathutil.hpp"
#include "cardguess/simulate.hpp"

namespace cardguess {

namespace {

// Terms with n*S below this are dropped; terms with n*S above ~45 are 1 to
// machine precision. Window cut at pmf_mode * e^-95 keeps the neglected
// probability mass under ~1e-41.
constexpr double kLogPmfCut = 95.0;

struct PmfWindow {
    int64_t k_lo = 0;
    int64_t k_hi = 0;
    std::vector<double> pmf; // index k - k_lo
};

PmfWindow pmf_window(int64_t m, double p) {
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    auto log_pmf = [&](int64_t k) {
        return log_choose(m, k) + (double)k * lp + (double)(m - k) * lq;
    };
    int64_t mode = (int64_t)std::floor((double)(m + 1) * p);
    mode = std::clamp<int64_t>(mode, 0, m);
    const double lp_mode = log_pmf(mode);
    const double cut = lp_mode - kLogPmfCut;

    // pmf(k+1)/pmf(k) = ((m-k)/(k+1)) (p/(1-p))
    const double odds = p / (1.0 - p);
    int64_t k_hi = mode;
    {
        double lg = lp_mode;
        while (k_hi < m) {
            lg += std::log((double)(m - k_hi) / (double)(k_hi + 1)) + std::log(odds);
            if (lg < cut) break;
            ++k_hi;
        }
    }
    int64_t k_lo = mode;
    {
        double lg = lp_mode;
        while (k_lo > 0) {
            lg -= std::log((double)(m - k_lo + 1) / (double)k_lo) + std::log(odds);
            if (lg < cut) break;
            --k_lo;
        }
    }

    PmfWindow w;
    w.k_lo = k_lo;
    w.k_hi = k_hi;
    w.pmf.resize((size_t)(k_hi - k_lo + 1));
    const double anchor = std::exp(lp_mode);
    w.pmf[(size_t)(mode - k_lo)] = anchor;
    double v = anchor;
    for (int64_t k = mode; k < k_hi; ++k) {
        v *= ((double)(m - k) / (double)(k + 1)) * odds;
        w.pmf[(size_t)(k + 1 - k_lo)] = v;
    }
    v = anchor;
    for (int64_t k = mode; k > k_lo; --k) {
        v *= ((double)k / (double)(m - k + 1)) / odds;
        w.pmf[(size_t)(k - 1 - k_lo)] = v;
    }
    return w;
}

} // namespace

BinomialSpec::BinomialSpec(int64_t n_, int64_t m_, double p_) : n(n_), m(m_), p(p_) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("BinomialSpec: n and m must be >= 1");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("BinomialSpec: p must lie in [0, 1]");
    }
}

double indep_max_expectation(int64_t n, int64_t m, double p) {
    return indep_max_expectation(BinomialSpec(n, m, p));
}

double indep_max_expectation(const BinomialSpec& spec) {
    const int64_t n = spec.n;
    const int64_t m = spec.m;
    const double p = spec.p;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return (double)m;

    PmfWindow w = pmf_window(m, p);

    // survival S(k) = P(Y > k), backward over the window
    std::vector<double> surv(w.pmf.size());
    double s = 0.0;
    for (int64_t k = w.k_hi; k >= w.k_lo; --k) {
        surv[(size_t)(k - w.k_lo)] = s;
        s += w.pmf[(size_t)(k - w.k_lo)];
    }

    KahanSum total;
    double fwd = 0.0; // F(k) within the window (lower tail below k_lo is negligible)
    for (int64_t k = w.k_lo; k <= std::min(w.k_hi, m - 1); ++k) {
        fwd += w.pmf[(size_t)(k - w.k_lo)];
        const double S = surv[(size_t)(k - w.k_lo)];
        double term;
        if (fwd < 0.5) {
            term = 1.0 - std::exp((double)n * std::log(fwd));
        } else {
            term = -std::expm1((double)n * std::log1p(-std::min(S, 1.0)));
        }
        total.add(term);
    }
    // every k below the window has F(k)^n ~ 0, contributing exactly 1
    return (double)w.k_lo + total.value();
}

namespace {

double emax_centered(int64_t n, int64_t m, double t) {
    // quadrature nodes reach t = exp(ln nm), which can overshoot by one ulp
    const double p = std::min(1.0, t / ((double)n * (double)m));
    return indep_max_expectation(n, m, p) - t / (double)n;
}

double exact_sum_value(const DeckSpec& spec, int workers) {
    const int64_t nm = spec.cards();
    std::vector<double> terms((size_t)nm);
    int w = workers > 0 ? workers : default_workers();
    w = (int)std::min<int64_t>(w, nm);
    auto work = [&](int wi) {
        const int64_t lo = nm * wi / w + 1;
        const int64_t hi = nm * (wi + 1) / w;
        for (int64_t t = lo; t <= hi; ++t) {
            terms[(size_t)t - 1] = emax_centered(spec.n, spec.m, (double)t) / (double)t;
        }
    };
    if (w == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (int wi = 0; wi < w; ++wi) threads.emplace_back(work, wi);
        for (auto& th : threads) th.join();
    }
    KahanSum sum;
    for (double term : terms) sum.add(term);
    return (double)spec.m + sum.value();
}

double quadrature_value(const DeckSpec& spec, int grid) {
    const int64_t nm = spec.cards();
    int64_t head = std::min<int64_t>(nm, std::max<int64_t>(32, grid / 4));
    // decks short enough that the strata would overlap are summed exactly
    if ((double)nm - (double)nm / 3.0 <= (double)head + 1.5) head = nm;
    KahanSum sum;
    for (int64_t t = 1; t <= head; ++t) {
        sum.add(emax_centered(spec.n, spec.m, (double)t) / (double)t);
    }
    if (head == nm) {
        return (double)spec.m + sum.value();
    }

    // integral of E[max Ybar(t)]/t dt = h(u) du with u = ln t, from head+1/2
    // (midpoint continuation of the unit-step sum) to nm
    std::vector<double> us;
    us.reserve((size_t)grid + 2);
    const double u0 = std::log((double)head + 0.5);
    const double d0 = (double)nm / 3.0;
    const double u1 = std::log((double)nm - d0);
    const int g_bulk = 2 * grid / 3;
    for (int i = 0; i < g_bulk; ++i) {
        us.push_back(u0 + (u1 - u0) * (double)i / (double)g_bulk);
    }
    const int g_right = grid - g_bulk;
    const double ratio = std::pow(0.5 / d0, 1.0 / (double)(g_right - 1));
    double d = d0;
    for (int i = 0; i < g_right; ++i) {
        us.push_back(std::log((double)nm - d));
        d *= ratio;
    }
    us.push_back(std::log((double)nm));
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());

    double integral = 0.0;
    double h_prev = emax_centered(spec.n, spec.m, std::exp(us[0]));
    for (size_t i = 1; i < us.size(); ++i) {
        const double h = emax_centered(spec.n, spec.m, std::exp(us[i]));
        integral += 0.5 * (h + h_prev) * (us[i] - us[i - 1]);
        h_prev = h;
    }
    return (double)spec.m + sum.value() + integral;
}

} // namespace

SurrogateValue s_tilde(const DeckSpec& spec, SurrogateMode mode,
                       const SurrogateOptions& opts) {
    DeckSpec checked(spec.n, spec.m);
    SurrogateValue out;
    out.mode = mode;
    if (mode == SurrogateMode::exact_sum) {
        if ((uint64_t)checked.cards() > opts.sum_cap) {
            throw CapacityError("s_tilde: nm = " + std::to_string(checked.cards()) +
                                " exceeds the exact-sum cap " + std::to_string(opts.sum_cap) +
                                " (use quadrature mode)");
        }
        out.value = exact_sum_value(checked, opts.workers);
    } else {
        if (opts.grid_size < 64) {
            throw std::invalid_argument("s_tilde: quadrature grid size must be >= 64");
        }
        out.grid_size = opts.grid_size;
        out.value = quadrature_value(checked, opts.grid_size);
        out.refinement_error = std::abs(out.value - quadrature_value(checked, opts.grid_size / 2));
    }
    return out;
}

std::vector<double> conditional_type_pmf(int64_t m, int64_t r, int64_t s, double p) {
    if (m < 1 || r < 1) {
        throw std::invalid_argument("conditional_type_pmf: m and r must be >= 1");
    }
    if (s < 0 || s > r * m) {
        throw std::invalid_argument("conditional_type_pmf: sum out of range");
    }
    std::vector<double> pmf((size_t)m + 1, 0.0);
    const int64_t jmin = std::max<int64_t>(0, s - (r - 1) * m);
    const int64_t jmax = std::min<int64_t>(m, s);
    if (jmin == jmax) {
        pmf[(size_t)jmin] = 1.0;
        return pmf;
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("conditional_type_pmf: p must lie in (0, 1)");
    }
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const int64_t rest = (r - 1) * m;
    const double denom = log_choose(r * m, s) + (double)s * lp + (double)(r * m - s) * lq;
    for (int64_t j = jmin; j <= jmax; ++j) {
        const double num = log_choose(m, j) + (double)j * lp + (double)(m - j) * lq +
                           log_choose(rest, s - j) + (double)(s - j) * lp +
                           (double)(rest - (s - j)) * lq;
        pmf[(size_t)j] = std::exp(num - denom);
    }
    return pmf;
}

std::vector<int64_t> conditional_sample(const DeckSpec& spec, int64_t t, RngStream& rng) {
    DeckSpec checked(spec.n, spec.m);
    if (t < 1 || t > checked.cards()) {
        throw std::invalid_argument("conditional_sample: t out of range");
    }
    const double p = (double)t / (double)checked.cards();
    std::vector<int64_t> out((size_t)checked.n, 0);
    int64_t s = t;
    for (int64_t i = 0; i < checked.n; ++i) {
        const int64_t r = checked.n - i;
        const std::vector<double> pmf = conditional_type_pmf(checked.m, r, s, p);
        double total = 0.0;
        for (double q : pmf) total += q;
        const double u = rng.next_double() * total;
        double acc = 0.0;
        int64_t pick = -1;
        for (int64_t j = 0; j <= checked.m; ++j) {
            acc += pmf[(size_t)j];
            if (u < acc) {
                pick = j;
                break;
            }
        }
        if (pick < 0) { // guard against fp drift at u ~ total
            pick = std::min<int64_t>(checked.m, s);
            while (pick > 0 && pmf[(size_t)pick] == 0.0) --pick;
        }
        out[(size_t)i] = pick;
        s -= pick;
    }
    return out;
}

double feller_gap(int64_t n, int64_t m, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("feller_gap: requires mp(1-p) > 0");
    }
    const double mp = (double)m * p;
    const double sigma = std::sqrt(mp * (1.0 - p));
    const double emax = indep_max_expectation(n, m, p);
    return (emax - mp) / sigma - std::sqrt(2.0 * std::log((double)n));
}

} // namespace cardguess
