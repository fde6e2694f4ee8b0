#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cardguess/asymptotics.hpp"
#include "cardguess/binomial.hpp"
#include "cardguess/birthday.hpp"
#include "cardguess/deck.hpp"
#include "cardguess/errors.hpp"
#include "cardguess/exact.hpp"
#include "cardguess/simulate.hpp"
#include "cardguess/strategy.hpp"

namespace {

using cardguess::CapacityError;
using cardguess::DeckSpec;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitCapacity = 3;

using CellValue = std::variant<std::monostate, int64_t, uint64_t, double, std::string>;

struct OutRow {
    std::vector<std::pair<std::string, CellValue>> items;

    void add(const std::string& key, CellValue v) { items.emplace_back(key, std::move(v)); }
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_cell(const CellValue& v) {
    if (std::holds_alternative<std::monostate>(v)) return "";
    if (const auto* i = std::get_if<int64_t>(&v)) return std::to_string(*i);
    if (const auto* u = std::get_if<uint64_t>(&v)) return std::to_string(*u);
    if (const auto* d = std::get_if<double>(&v)) return fmt_double(*d);
    return std::get<std::string>(v);
}

class Writer {
public:
    Writer(std::ostream& os, bool json) : os_(os), json_(json) {}

    void header(const std::vector<std::string>& names) {
        if (json_) return;
        for (size_t i = 0; i < names.size(); ++i) {
            if (i) os_ << ',';
            os_ << names[i];
        }
        os_ << '\n';
    }

    void row(const OutRow& r) {
        if (json_) {
            nlohmann::ordered_json obj;
            for (const auto& [key, v] : r.items) {
                if (std::holds_alternative<std::monostate>(v)) continue;
                if (const auto* i = std::get_if<int64_t>(&v)) obj[key] = *i;
                else if (const auto* u = std::get_if<uint64_t>(&v)) obj[key] = *u;
                else if (const auto* d = std::get_if<double>(&v)) obj[key] = *d;
                else obj[key] = std::get<std::string>(v);
            }
            os_ << obj.dump() << '\n';
        } else {
            for (size_t i = 0; i < r.items.size(); ++i) {
                if (i) os_ << ',';
                os_ << csv_cell(r.items[i].second);
            }
            os_ << '\n';
        }
    }

private:
    std::ostream& os_;
    bool json_;
};

const std::vector<std::string> kRunHeader = {"n", "m", "method", "value",
                                             "stderr", "reps", "seed"};

OutRow run_row(int64_t n, int64_t m, const std::string& method, CellValue value,
               CellValue se = std::monostate{}, CellValue reps = std::monostate{},
               CellValue seed = std::monostate{}) {
    OutRow r;
    r.add("n", n);
    r.add("m", m);
    r.add("method", method);
    r.add("value", std::move(value));
    r.add("stderr", std::move(se));
    r.add("reps", std::move(reps));
    r.add("seed", std::move(seed));
    return r;
}

// "a" or "a..b" (inclusive)
std::vector<int64_t> parse_range(const std::string& text) {
    const auto pos = text.find("..");
    std::vector<int64_t> out;
    if (pos == std::string::npos) {
        out.push_back(std::stoll(text));
        return out;
    }
    const int64_t a = std::stoll(text.substr(0, pos));
    const int64_t b = std::stoll(text.substr(pos + 2));
    if (a > b) throw std::invalid_argument("empty range: " + text);
    for (int64_t v = a; v <= b; ++v) out.push_back(v);
    return out;
}

int64_t parse_single(const std::string& text, const char* what) {
    const auto vals = parse_range(text);
    if (vals.size() != 1) {
        throw std::invalid_argument(std::string(what) + " must be a single value here");
    }
    return vals[0];
}

struct CommonOpts {
    std::string n_text, m_text;
    uint64_t reps = 100000;
    uint64_t seed = 0;
    int workers = 0;
    std::string strategy = "greedy";
    std::string tiebreak = "lowest";
    bool rational = false;
    int grid_size = 1024;
    uint64_t state_cap = 10'000'000;
    uint64_t sum_cap = 1'000'000;
    double c = 1.0;
    double epsilon = 0.1;
    std::string format = "csv";
    std::string output;
    bool profile = false;
    std::string mode = "auto";
    double p = -1.0;
    bool feller = false;
    uint64_t steps = 0;
};

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open output file: " + path);
            os = &file;
        }
    }
};

// ---------------------------------------------------------------------------

int cmd_simulate(const CommonOpts& o) {
    const DeckSpec spec(parse_single(o.n_text, "--n"), parse_single(o.m_text, "--m"));
    cardguess::StrategyConfig strat{cardguess::parse_strategy(o.strategy),
                                    cardguess::parse_tiebreak(o.tiebreak)};
    const auto summary = cardguess::estimate_score(spec, strat, o.reps, o.seed, o.workers);
    OutputTarget target(o.output);
    Writer w(*target.os, o.format == "json");
    w.header(kRunHeader);
    w.row(run_row(spec.n, spec.m, summary.strategy_id, summary.mean, summary.stderr_,
                  summary.reps, summary.seed));
    return kExitOk;
}

int cmd_exact(const CommonOpts& o, const std::string& method) {
    const DeckSpec spec(parse_single(o.n_text, "--n"), parse_single(o.m_text, "--m"));
    cardguess::ExactOptions opts;
    opts.rational = o.rational;
    opts.state_cap = o.state_cap;
    OutputTarget target(o.output);
    Writer w(*target.os, o.format == "json");

    if (o.profile) {
        auto [profile, value] = cardguess::score_decomposition(spec, opts);
        w.header({"t", "p", "emax", "emax_over_t"});
        for (int64_t t = 1; t <= spec.cards(); ++t) {
            const double emax = profile.emax[(size_t)t - 1];
            OutRow r;
            r.add("t", t);
            r.add("p", profile.p(t));
            r.add("emax", emax);
            r.add("emax_over_t", emax / (double)t);
            w.row(r);
        }
        return kExitOk;
    }

    w.header(kRunHeader);
    auto emit = [&](const cardguess::ExactValue& v, const char* name) {
        CellValue value = v.exact ? CellValue(v.exact_str()) : CellValue(v.value);
        w.row(run_row(spec.n, spec.m, name, std::move(value)));
    };
    if (method == "dp" || method == "both") {
        emit(cardguess::exact_value_dp(spec, opts), "dp");
    }
    if (method == "linearity" || method == "both") {
        emit(cardguess::score_decomposition(spec, opts).second, "linearity");
    }
    return kExitOk;
}

int cmd_indep(const CommonOpts& o) {
    const DeckSpec spec(parse_single(o.n_text, "--n"), parse_single(o.m_text, "--m"));
    cardguess::SurrogateOptions opts;
    opts.grid_size = o.grid_size;
    opts.sum_cap = o.sum_cap;
    opts.workers = o.workers;
    OutputTarget target(o.output);
    Writer w(*target.os, o.format == "json");

    if (o.p >= 0.0) {
        w.header(kRunHeader);
        if (o.feller) {
            w.row(run_row(spec.n, spec.m, "feller-gap",
                          cardguess::feller_gap(spec.n, spec.m, o.p)));
        } else {
            w.row(run_row(spec.n, spec.m, "emax-indep",
                          cardguess::indep_max_expectation(spec.n, spec.m, o.p)));
        }
        return kExitOk;
    }

    if (o.profile) {
        if ((uint64_t)spec.cards() > opts.sum_cap) {
            throw CapacityError("indep --profile: nm exceeds the exact-sum cap");
        }
        w.header({"t", "p", "emax_indep", "term"});
        for (int64_t t = 1; t <= spec.cards(); ++t) {
            const double p = (double)t / (double)spec.cards();
            const double emax = cardguess::indep_max_expectation(spec.n, spec.m, p);
            OutRow r;
            r.add("t", t);
            r.add("p", p);
            r.add("emax_indep", emax);
            r.add("term", emax / (double)t);
            w.row(r);
        }
        return kExitOk;
    }

    cardguess::SurrogateMode mode;
    if (o.mode == "exact") {
        mode = cardguess::SurrogateMode::exact_sum;
    } else if (o.mode == "quadrature") {
        mode = cardguess::SurrogateMode::quadrature;
    } else {
        mode = (uint64_t)spec.cards() <= opts.sum_cap ? cardguess::SurrogateMode::exact_sum
                                                      : cardguess::SurrogateMode::quadrature;
    }
    const auto sv = cardguess::s_tilde(spec, mode, opts);
    w.header(kRunHeader);
    w.row(run_row(spec.n, spec.m,
                  sv.mode == cardguess::SurrogateMode::exact_sum ? "stilde-exact"
                                                                 : "stilde-quadrature",
                  sv.value));
    return kExitOk;
}

int cmd_asympt(const CommonOpts& o) {
    const DeckSpec spec(parse_single(o.n_text, "--n"), parse_single(o.m_text, "--m"));
    const cardguess::AdmissibilityParams params{o.c, o.epsilon};
    OutputTarget target(o.output);
    Writer w(*target.os, o.format == "json");
    w.header(kRunHeader);
    w.row(run_row(spec.n, spec.m, "dg", cardguess::dg_estimate(spec.n, spec.m).value));
    w.row(run_row(spec.n, spec.m, "ho", cardguess::ho_estimate(spec.n, spec.m).value));
    const auto main_est = cardguess::main_estimate(spec.n, spec.m, params);
    w.row(run_row(spec.n, spec.m, "main", main_est.value));
    w.row(run_row(spec.n, spec.m, "admissible", (int64_t)(main_est.admissible ? 1 : 0)));
    return kExitOk;
}

int cmd_markov(const CommonOpts& o) {
    const int64_t n = parse_single(o.n_text, "--n");
    const auto moments = cardguess::return_time_moments(n);
    OutputTarget target(o.output);
    Writer w(*target.os, o.format == "json");
    w.header({"n", "et", "et2", "et_over_sqrt_n", "et2_over_n", "steps", "excursions",
              "renewal_ratio"});
    OutRow r;
    r.add("n", n);
    r.add("et", moments.et);
    r.add("et2", moments.et2);
    r.add("et_over_sqrt_n", moments.et / std::sqrt((double)n));
    r.add("et2_over_n", moments.et2 / (double)n);
    if (o.steps > 0) {
        cardguess::RngStream rng(o.seed, 0);
        const auto sim = cardguess::simulate_excursions(n, o.steps, rng);
        r.add("steps", sim.steps);
        r.add("excursions", sim.excursions);
        r.add("renewal_ratio",
              ((double)sim.excursions / (double)sim.steps) * moments.et);
    } else {
        r.add("steps", std::monostate{});
        r.add("excursions", std::monostate{});
        r.add("renewal_ratio", std::monostate{});
    }
    w.row(r);
    return kExitOk;
}

struct CompareCell {
    int64_t n = 0, m = 0;
    std::optional<double> s_exact;
    std::optional<double> mc_mean, mc_stderr;
    std::optional<double> stilde;
    double dg = 0, ho = 0, main_v = 0;
    bool admissible = false;
};

int cmd_compare(const CommonOpts& o) {
    const auto ns = parse_range(o.n_text);
    const auto ms = parse_range(o.m_text);
    if (ns.empty() || ms.empty()) {
        throw std::invalid_argument("compare: empty grid");
    }
    std::vector<std::pair<int64_t, int64_t>> grid;
    for (int64_t n : ns) {
        for (int64_t m : ms) grid.emplace_back(n, m);
    }

    std::vector<CompareCell> cells(grid.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= grid.size()) return;
            const auto [n, m] = grid[idx];
            CompareCell cell;
            cell.n = n;
            cell.m = m;
            const DeckSpec spec(n, m);
            try {
                cardguess::ExactOptions eo;
                eo.state_cap = o.state_cap;
                cell.s_exact = cardguess::exact_value_dp(spec, eo).value;
            } catch (const CapacityError&) {
            }
            if (o.reps >= 2) {
                const auto mc = cardguess::estimate_score(
                    spec, {cardguess::StrategyKind::greedy, cardguess::Tiebreak::lowest_index},
                    o.reps, o.seed, 1);
                cell.mc_mean = mc.mean;
                cell.mc_stderr = mc.stderr_;
            }
            try {
                cardguess::SurrogateOptions so;
                so.sum_cap = o.sum_cap;
                so.workers = 1;
                cell.stilde =
                    cardguess::s_tilde(spec, cardguess::SurrogateMode::exact_sum, so).value;
            } catch (const CapacityError&) {
            }
            cell.dg = cardguess::dg_estimate(n, m).value;
            cell.ho = cardguess::ho_estimate(n, m).value;
            const auto main_est = cardguess::main_estimate(n, m, {o.c, o.epsilon});
            cell.main_v = main_est.value;
            cell.admissible = main_est.admissible;
            cells[idx] = cell;
        }
    };
    int workers = o.workers > 0 ? o.workers : cardguess::default_workers();
    workers = (int)std::min<size_t>((size_t)workers, grid.size());
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (int i = 0; i < workers; ++i) threads.emplace_back(work);
        for (auto& th : threads) th.join();
    }

    OutputTarget target(o.output);
    Writer w(*target.os, o.format == "json");
    w.header({"n", "m", "s_exact", "s_mc_mean", "s_mc_stderr", "s_tilde", "dg", "ho",
              "main", "admissible"});
    auto opt_cell = [](const std::optional<double>& v) {
        return v ? CellValue(*v) : CellValue(std::monostate{});
    };
    for (const auto& cell : cells) {
        if (cell.s_exact && cell.mc_mean && cell.mc_stderr &&
            std::abs(*cell.mc_mean - *cell.s_exact) > 4.0 * *cell.mc_stderr) {
            std::cerr << "warning: n=" << cell.n << " m=" << cell.m
                      << ": MC mean deviates from the exact value by more than 4 stderr\n";
        }
        OutRow r;
        r.add("n", cell.n);
        r.add("m", cell.m);
        r.add("s_exact", opt_cell(cell.s_exact));
        r.add("s_mc_mean", opt_cell(cell.mc_mean));
        r.add("s_mc_stderr", opt_cell(cell.mc_stderr));
        r.add("s_tilde", opt_cell(cell.stilde));
        r.add("dg", cell.dg);
        r.add("ho", cell.ho);
        r.add("main", cell.main_v);
        r.add("admissible", (int64_t)(cell.admissible ? 1 : 0));
        w.row(r);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"card-guessing with complete feedback: simulation, exact values, "
                 "surrogates, and asymptotics"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string exact_method = "dp";

    auto add_common = [&](CLI::App* cmd, bool needs_m) {
        cmd->add_option("--n", o.n_text, "number of distinct types (or a..b in compare)")
            ->required();
        if (needs_m) {
            cmd->add_option("--m", o.m_text, "copies per type (or a..b in compare)")
                ->required();
        }
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--output", o.output, "write results to this file");
    };

    auto* sim = app.add_subcommand("simulate", "Monte Carlo score estimate");
    add_common(sim, true);
    sim->add_option("--reps", o.reps, "number of replications (>= 2)");
    sim->add_option("--seed", o.seed, "RNG seed");
    sim->add_option("--workers", o.workers, "worker threads (0 = auto)");
    sim->add_option("--strategy", o.strategy, "guessing strategy")
        ->check(CLI::IsMember({"fixed", "greedy", "uniform"}));
    sim->add_option("--tiebreak", o.tiebreak, "greedy tiebreak")
        ->check(CLI::IsMember({"lowest", "random"}));

    auto* exa = app.add_subcommand("exact", "exact expected score");
    add_common(exa, true);
    exa->add_flag("--rational", o.rational, "carry exact rational arithmetic");
    exa->add_option("--method", exact_method, "computation method")
        ->check(CLI::IsMember({"dp", "linearity", "both"}));
    exa->add_option("--state-cap", o.state_cap, "max DP states");
    exa->add_flag("--profile", o.profile, "emit per-t E[max X(t)] profile");

    auto* ind = app.add_subcommand("indep", "independent-binomial surrogate");
    add_common(ind, true);
    ind->add_option("--mode", o.mode, "surrogate mode")
        ->check(CLI::IsMember({"auto", "exact", "quadrature"}));
    ind->add_option("--grid-size", o.grid_size, "quadrature grid size (>= 64)");
    ind->add_option("--sum-cap", o.sum_cap, "exact-sum cap on nm");
    ind->add_option("--workers", o.workers, "worker threads (0 = auto)");
    ind->add_flag("--profile", o.profile, "emit per-t surrogate profile");
    ind->add_option("--p", o.p, "evaluate E[max Bin(m,p)] at this p instead");
    ind->add_flag("--feller", o.feller, "emit the Feller gap at --p");

    auto* asy = app.add_subcommand("asympt", "asymptotic estimates");
    add_common(asy, true);
    asy->add_option("--c", o.c, "admissibility constant c");
    asy->add_option("--epsilon", o.epsilon, "admissibility exponent epsilon");

    auto* mar = app.add_subcommand("markov", "birthday-chain statistics");
    add_common(mar, false);
    mar->add_option("--steps", o.steps, "also simulate this many chain steps");
    mar->add_option("--seed", o.seed, "RNG seed for the simulation");

    auto* cmp = app.add_subcommand("compare", "method comparison over a grid");
    add_common(cmp, true);
    cmp->add_option("--reps", o.reps, "MC replications per cell (0 disables MC)");
    cmp->add_option("--seed", o.seed, "RNG seed");
    cmp->add_option("--workers", o.workers, "worker threads (0 = auto)");
    cmp->add_option("--state-cap", o.state_cap, "max DP states");
    cmp->add_option("--sum-cap", o.sum_cap, "exact-sum cap on nm");
    cmp->add_option("--c", o.c, "admissibility constant c");
    cmp->add_option("--epsilon", o.epsilon, "admissibility exponent epsilon");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (sim->parsed()) return cmd_simulate(o);
        if (exa->parsed()) return cmd_exact(o, exact_method);
        if (ind->parsed()) return cmd_indep(o);
        if (asy->parsed()) return cmd_asympt(o);
        if (mar->parsed()) return cmd_markov(o);
        if (cmp->parsed()) return cmd_compare(o);
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}
