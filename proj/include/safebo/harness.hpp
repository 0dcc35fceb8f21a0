#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "safebo/baselines.hpp"
#include "safebo/benchmarks.hpp"
#include "safebo/confidence.hpp"
#include "safebo/errors.hpp"
#include "safebo/gp_model.hpp"
#include "safebo/grid.hpp"
#include "safebo/msafeopt.hpp"

namespace safebo {

enum class AlgorithmKind { Case1, Case2, Case3, MSafeUcb, SafeOptMC, PredVar };

inline const char* algorithm_name(AlgorithmKind a) {
    switch (a) {
        case AlgorithmKind::Case1: return "case1";
        case AlgorithmKind::Case2: return "case2";
        case AlgorithmKind::Case3: return "case3";
        case AlgorithmKind::MSafeUcb: return "msafeucb";
        case AlgorithmKind::SafeOptMC: return "safeopt_mc";
        case AlgorithmKind::PredVar: return "predvar";
    }
    return "?";
}

inline std::optional<AlgorithmKind> parse_algorithm(std::string_view name) {
    if (name == "case1" || name == "msafeopt") return AlgorithmKind::Case1;
    if (name == "case2") return AlgorithmKind::Case2;
    if (name == "case3") return AlgorithmKind::Case3;
    if (name == "msafeucb") return AlgorithmKind::MSafeUcb;
    if (name == "safeopt_mc" || name == "safeopt") return AlgorithmKind::SafeOptMC;
    if (name == "predvar") return AlgorithmKind::PredVar;
    return std::nullopt;
}

struct ExperimentConfig {
    BenchmarkId benchmark = BenchmarkId::ClinicalTrial;
    AlgorithmKind algorithm = AlgorithmKind::Case1;
    std::size_t rounds = 100;
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
    double growth_scale = 1.0;
    bool refined_acq = false;
    bool robust_elim = true;
    BetaSchedule beta_f = ConstantBeta{3.0};
    BetaSchedule beta_g = ConstantBeta{3.0};
    std::vector<std::size_t> grid;  // empty: benchmark default; one value: same count per dimension
    std::string out = "results";
    bool record_timing = true;      // false writes ms = 0 so logs are byte-reproducible
    std::size_t threads = 0;        // 0: one thread per seed
    std::optional<bool> noiseless;  // override the benchmark's observation noise

    void validate() const {
        if (rounds < 1) throw ConfigError("rounds must be at least 1");
        if (seeds.empty()) throw ConfigError("at least one seed is required");
        if (!(growth_scale > 0.0)) throw ConfigError("growth scale c must be positive");
        safebo::validate(beta_f);
        safebo::validate(beta_g);
    }
};

struct RegretRow {
    std::size_t t = 0;
    double s = 0.0;
    std::vector<double> x;
    double f_true = 0.0;
    double g_true = 0.0;
    bool violation = false;
    double r = 0.0;
    double r_prime = 0.0;
    double r_x = 0.0;
    double cum_r = 0.0;
    double cum_r_prime = 0.0;
    double cum_r_x = 0.0;
    std::size_t n_surviving = 0;
    std::size_t n_g = 0;
    std::size_t n_m = 0;
    double ms = 0.0;
};

struct RegretLog {
    std::uint64_t seed = 0;
    std::size_t x_dims = 1;
    std::vector<RegretRow> rows;
    std::string termination;  // non-empty when the run ended before T rounds
    std::string error;        // non-empty when the seed aborted on a numerical failure

    std::size_t violations() const {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.violation; }));
    }
};

/// Everything about a benchmark that does not depend on the seed.
struct ExperimentContext {
    BenchmarkSpec bench;
    GridDomain grid;
    TruthTable truth;
    OracleSolution oracle;
    GrowthBounds growth;
};

/// Per-round hook for tests: (round, decision, fields f/g) after selection.
using RoundObserver =
    std::function<void(std::size_t, const RoundDecision&, const ConfidenceField&, const ConfidenceField&)>;

inline ExperimentContext make_context(const BenchmarkSpec& bench, const std::vector<std::size_t>& grid_override = {}) {
    ExperimentContext ctx;
    ctx.bench = bench;
    ctx.grid = benchmark_grid(bench, grid_override);
    ctx.truth = tabulate(bench, ctx.grid);
    const ValidationReport report = validate_benchmark(bench, ctx.grid, ctx.truth);
    if (!report.ok()) {
        throw ConfigError("benchmark '" + bench.name + "' failed validation: " + report.problems.front());
    }
    ctx.oracle = oracle_optima(ctx.grid, ctx.truth, bench.h);
    ctx.growth = resolve_growth_bounds(bench, ctx.grid, ctx.truth);
    return ctx;
}

inline AlgoConfig algo_config_for(const ExperimentConfig& cfg, const ExperimentContext& ctx) {
    AlgoConfig a;
    switch (cfg.algorithm) {
        case AlgorithmKind::Case1: a.variant = Variant::Case1; break;
        case AlgorithmKind::Case2: a.variant = Variant::Case2; break;
        case AlgorithmKind::Case3: a.variant = Variant::Case3; break;
        case AlgorithmKind::MSafeUcb: a.variant = Variant::MSafeUcb; break;
        default: break;
    }
    a.l_f = ctx.growth.l_f;
    a.l_g_prime = ctx.growth.l_g_prime;
    a.growth_scale = cfg.growth_scale;
    a.refined_acq = cfg.refined_acq;
    a.robust_elim = cfg.robust_elim;
    a.h = ctx.bench.h;
    a.beta_f = cfg.beta_f;
    a.beta_g = cfg.beta_g;
    return a;
}

/// One seed of one algorithm. Numerical failures are recorded in `RegretLog::error`.
inline RegretLog run_seed(const ExperimentConfig& cfg, const ExperimentContext& ctx, std::uint64_t seed,
                          const RoundObserver& observer = {}) {
    RegretLog log;
    log.seed = seed;
    log.x_dims = ctx.grid.x_dims();
    const BenchmarkSpec& b = ctx.bench;
    const GridDomain& grid = ctx.grid;

    GpModel model_f(b.kernel_f, b.gp_noise_f);
    GpModel model_g(b.kernel_g, b.gp_noise_g);
    std::optional<MSafeOpt> msafeopt;
    if (cfg.algorithm != AlgorithmKind::SafeOptMC && cfg.algorithm != AlgorithmKind::PredVar) {
        msafeopt.emplace(algo_config_for(cfg, ctx));
    }

    // Independent streams for f and g noise so algorithms see the same noise at a fixed seed.
    std::seed_seq seq_f{seed, std::uint64_t{0}};
    std::seed_seq seq_g{seed, std::uint64_t{1}};
    std::mt19937_64 rng_f(seq_f);
    std::mt19937_64 rng_g(seq_g);
    std::normal_distribution<double> normal(0.0, 1.0);
    const bool noisy = !cfg.noiseless.value_or(false);
    const double std_f = noisy ? b.noise_std_f : 0.0;
    const double std_g = noisy ? b.noise_std_g : 0.0;

    double cum_r = 0.0, cum_rp = 0.0, cum_rx = 0.0;
    try {
        for (std::size_t t = 1; t <= cfg.rounds; ++t) {
            const auto start = std::chrono::steady_clock::now();
            const double gamma_f = std::holds_alternative<TheoreticalBeta>(cfg.beta_f) ? model_f.empirical_info_gain() : 0.0;
            const double gamma_g = std::holds_alternative<TheoreticalBeta>(cfg.beta_g) ? model_g.empirical_info_gain() : 0.0;
            const ConfidenceField field_f = build_field(model_f, grid, beta_at(cfg.beta_f, t, gamma_f));
            const ConfidenceField field_g = build_field(model_g, grid, beta_at(cfg.beta_g, t, gamma_g));

            RoundDecision d;
            switch (cfg.algorithm) {
                case AlgorithmKind::SafeOptMC: d = safeopt_mc_step(grid, field_f, field_g, b.h, t); break;
                case AlgorithmKind::PredVar: d = predvar_step(grid, field_f, field_g, b.h, t); break;
                default: d = msafeopt->select(grid, field_f, field_g); break;
            }
            if (observer) observer(t, d, field_f, field_g);
            if (d.terminal()) {
                log.termination = "round " + std::to_string(t) + ": " + d.terminal_reason;
                break;
            }

            const GridIndex sel = d.selection->point;
            const std::size_t k = grid.flat(sel);
            const double f_true = ctx.truth.f[k];
            const double g_true = ctx.truth.g[k];
            const double noise_f = normal(rng_f);
            const double noise_g = normal(rng_g);
            const Point u = grid.unit_point(sel.s, sel.x);
            model_f.add_observation({u, f_true + std_f * noise_f});
            model_g.add_observation({u, g_true + std_g * noise_g});

            RegretRow row;
            row.t = t;
            row.s = grid.s_value(sel.s);
            const Point xp = grid.x_point(sel.x);
            row.x.assign(xp.data(), xp.data() + xp.size());
            row.f_true = f_true;
            row.g_true = g_true;
            row.violation = g_true > b.h;
            row.r = ctx.oracle.global_value - f_true;
            row.r_prime = ctx.oracle.per_x_value[sel.x] - f_true;
            double rx = -std::numeric_limits<double>::infinity();
            for (std::size_t ix = 0; ix < grid.n_x(); ++ix) {
                const double guess = ctx.truth.f[grid.flat(d.state.maximizer[ix], ix)];
                rx = std::max(rx, ctx.oracle.per_x_value[ix] - guess);
            }
            row.r_x = rx;
            cum_r += row.r;
            cum_rp += row.r_prime;
            cum_rx += row.r_x;
            row.cum_r = cum_r;
            row.cum_r_prime = cum_rp;
            row.cum_r_x = cum_rx;
            row.n_surviving = d.state.n_surviving();
            row.n_g = d.state.expanders.size();
            row.n_m = d.state.maximizers.size();
            if (cfg.record_timing) {
                row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            }
            log.rows.push_back(std::move(row));
        }
    } catch (const NumericalError& e) {
        log.error = e.what();
    }
    return log;
}

/// Runs every seed of `cfg`, in parallel across seeds. Logs come back in seed order.
inline std::vector<RegretLog> run_experiment(const ExperimentConfig& cfg, const ExperimentContext& ctx) {
    cfg.validate();
    std::vector<RegretLog> logs(cfg.seeds.size());
    std::vector<std::exception_ptr> errors(cfg.seeds.size());
    const std::size_t workers = cfg.threads == 0 ? cfg.seeds.size() : std::min(cfg.threads, cfg.seeds.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < cfg.seeds.size(); i = next++) {
            try {
                logs[i] = run_seed(cfg, ctx, cfg.seeds[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return logs;
}

inline std::vector<RegretLog> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    return run_experiment(cfg, make_context(make_benchmark(cfg.benchmark), cfg.grid));
}

// ---------------------------------------------------------------------------
// Aggregates over seeds.
// ---------------------------------------------------------------------------

enum class Metric { R, RPrime, RX };

inline double cumulative(const RegretRow& row, Metric m) {
    switch (m) {
        case Metric::R: return row.cum_r;
        case Metric::RPrime: return row.cum_r_prime;
        case Metric::RX: return row.cum_r_x;
    }
    return 0.0;
}

inline double instantaneous(const RegretRow& row, Metric m) {
    switch (m) {
        case Metric::R: return row.r;
        case Metric::RPrime: return row.r_prime;
        case Metric::RX: return row.r_x;
    }
    return 0.0;
}

/// Mean over seeds of (cumulative metric at round t) / t. Throws if any seed stopped earlier.
inline double mean_normalized(const std::vector<RegretLog>& logs, Metric m, std::size_t t) {
    double sum = 0.0;
    for (const auto& log : logs) {
        if (log.rows.size() < t) throw ConfigError("seed " + std::to_string(log.seed) + " has fewer than t rounds");
        sum += cumulative(log.rows[t - 1], m) / static_cast<double>(t);
    }
    return sum / static_cast<double>(logs.size());
}

/// Mean over seeds of the instantaneous metric at round t.
inline double mean_instantaneous(const std::vector<RegretLog>& logs, Metric m, std::size_t t) {
    double sum = 0.0;
    for (const auto& log : logs) {
        if (log.rows.size() < t) throw ConfigError("seed " + std::to_string(log.seed) + " has fewer than t rounds");
        sum += instantaneous(log.rows[t - 1], m);
    }
    return sum / static_cast<double>(logs.size());
}

}  // namespace safebo
