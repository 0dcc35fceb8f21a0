#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "safebo/benchmarks.hpp"
#include "safebo/config.hpp"
#include "safebo/csv.hpp"
#include "safebo/errors.hpp"
#include "safebo/harness.hpp"

namespace safebo {

namespace detail {

struct CliOverrides {
    std::string config;
    std::string benchmark;
    std::string algo;
    std::optional<std::size_t> rounds;
    std::string seeds;
    std::string grid;
    std::optional<double> c;
    bool refined = false;
    std::string out;
    bool no_timing = false;
    std::optional<std::size_t> threads;
    bool noiseless = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void add_common_options(CLI::App& cmd, CliOverrides& o, bool experiment) {
    cmd.add_option("--config", o.config, "key = value config file");
    cmd.add_option("--benchmark", o.benchmark, "clinical | synthetic2d | synthetic3d | pendulum");
    cmd.add_option("--grid", o.grid, "points per dimension: N or N,N[,N]");
    if (!experiment) return;
    cmd.add_option("--algo", o.algo, "case1 | case2 | case3 | msafeucb | safeopt_mc | predvar");
    cmd.add_option("--rounds", o.rounds, "rounds T per seed");
    cmd.add_option("--seeds", o.seeds, "comma-separated seeds");
    cmd.add_option("--c", o.c, "growth scale c");
    cmd.add_flag("--refined", o.refined, "refined acquisition on G_t");
    cmd.add_option("--out", o.out, "output directory");
    cmd.add_flag("--no-timing", o.no_timing, "write ms = 0 for byte-identical logs");
    cmd.add_option("--threads", o.threads, "worker threads (0: one per seed)");
    cmd.add_flag("--noiseless", o.noiseless, "disable observation noise");
}

// Flag values are usage errors; the same mistakes inside a config file are config errors.
inline ExperimentConfig resolve_config(const CliOverrides& o) {
    ExperimentConfig cfg;
    if (!o.config.empty()) cfg = load_config(o.config);
    if (!o.benchmark.empty()) {
        auto b = parse_benchmark(o.benchmark);
        if (!b) throw UsageError("unknown benchmark '" + o.benchmark + "'");
        cfg.benchmark = *b;
    }
    if (!o.algo.empty()) {
        auto a = parse_algorithm(o.algo);
        if (!a) throw UsageError("unknown algorithm '" + o.algo + "'");
        cfg.algorithm = *a;
    }
    try {
        if (o.rounds) {
            if (*o.rounds < 1) throw UsageError("--rounds must be at least 1");
            cfg.rounds = *o.rounds;
        }
        if (!o.seeds.empty()) apply_setting(cfg, "seeds", o.seeds);
        if (!o.grid.empty()) apply_setting(cfg, "grid", o.grid);
        if (o.c) {
            if (!(*o.c > 0.0)) throw UsageError("--c must be positive");
            cfg.growth_scale = *o.c;
        }
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    if (o.refined) cfg.refined_acq = true;
    if (!o.out.empty()) cfg.out = o.out;
    if (o.no_timing) cfg.record_timing = false;
    if (o.threads) cfg.threads = *o.threads;
    if (o.noiseless) cfg.noiseless = true;
    cfg.validate();
    return cfg;
}

struct RunOutcome {
    std::vector<RegretLog> logs;
    std::size_t violations = 0;
    std::size_t failed_seeds = 0;
};

inline RunOutcome run_and_write(const ExperimentConfig& cfg, const ExperimentContext& ctx, std::ostream& out) {
    RunOutcome res;
    res.logs = run_experiment(cfg, ctx);
    const std::string bname = benchmark_name(cfg.benchmark);
    const std::string aname = algorithm_name(cfg.algorithm);
    for (const RegretLog& log : res.logs) {
        const auto path = log_path(cfg.out, bname, aname, log.seed);
        write_csv(path, log);
        res.violations += log.violations();
        if (!log.error.empty()) {
            ++res.failed_seeds;
            std::fprintf(stderr, "safebo: seed %llu aborted: %s\n", static_cast<unsigned long long>(log.seed),
                         log.error.c_str());
        }
        if (!log.termination.empty()) {
            out << aname << " seed " << log.seed << " stopped early at " << log.termination << '\n';
        }
        for (const RegretRow& r : log.rows) {
            if (r.violation) {
                std::fprintf(stderr, "safebo: SAFETY VIOLATION %s seed %llu round %zu: g = %.17g > h = %.17g\n",
                             aname.c_str(), static_cast<unsigned long long>(log.seed), r.t, r.g_true, ctx.bench.h);
            }
        }
    }
    return res;
}

inline double mean_final(const std::vector<RegretLog>& logs, Metric m) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& log : logs) {
        if (log.rows.empty()) continue;
        sum += cumulative(log.rows.back(), m) / static_cast<double>(log.rows.size());
        ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

inline void print_summary_header(std::ostream& out) {
    out << "algorithm,seeds,R_T/T,R'_T/T,R^X_T/T,violations\n";
}

inline void print_summary_row(std::ostream& out, const std::string& name, const RunOutcome& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%zu,%.6g,%.6g,%.6g,%zu\n", name.c_str(), r.logs.size(),
                  mean_final(r.logs, Metric::R), mean_final(r.logs, Metric::RPrime), mean_final(r.logs, Metric::RX),
                  r.violations);
    out << buf;
}

inline int exit_for(const RunOutcome& r) {
    if (r.violations > 0) return static_cast<int>(ExitCode::SafetyViolation);
    if (r.failed_seeds > 0) return static_cast<int>(ExitCode::Numerical);
    return static_cast<int>(ExitCode::Ok);
}

inline int cmd_run(const CliOverrides& o, std::ostream& out) {
    const ExperimentConfig cfg = resolve_config(o);
    const ExperimentContext ctx = make_context(make_benchmark(cfg.benchmark), cfg.grid);
    const RunOutcome r = run_and_write(cfg, ctx, out);
    print_summary_header(out);
    print_summary_row(out, algorithm_name(cfg.algorithm), r);
    return exit_for(r);
}

inline int cmd_compare(const CliOverrides& o, std::ostream& out) {
    ExperimentConfig cfg = resolve_config(o);
    if (cfg.algorithm == AlgorithmKind::SafeOptMC || cfg.algorithm == AlgorithmKind::PredVar) {
        throw UsageError("compare needs an M-SafeOpt variant as --algo");
    }
    const ExperimentContext ctx = make_context(make_benchmark(cfg.benchmark), cfg.grid);
    std::vector<std::pair<std::string, RunOutcome>> results;
    for (AlgorithmKind a : {cfg.algorithm, AlgorithmKind::SafeOptMC, AlgorithmKind::PredVar}) {
        cfg.algorithm = a;
        results.emplace_back(algorithm_name(a), run_and_write(cfg, ctx, out));
    }
    print_summary_header(out);
    int code = 0;
    for (const auto& [name, r] : results) {
        print_summary_row(out, name, r);
        code = std::max(code, exit_for(r));
    }
    return code;
}

inline BenchmarkId resolve_benchmark(const CliOverrides& o, std::vector<std::size_t>& grid) {
    ExperimentConfig cfg;
    if (!o.config.empty()) cfg = load_config(o.config);
    if (!o.benchmark.empty()) {
        auto b = parse_benchmark(o.benchmark);
        if (!b) throw UsageError("unknown benchmark '" + o.benchmark + "'");
        cfg.benchmark = *b;
    }
    grid = cfg.grid;
    if (!o.grid.empty()) {
        try {
            grid = parse_grid(o.grid);
        } catch (const ConfigError& e) {
            throw UsageError(e.what());
        }
    }
    return cfg.benchmark;
}

inline int cmd_oracle(const CliOverrides& o, std::ostream& out) {
    std::vector<std::size_t> grid_override;
    const BenchmarkSpec b = make_benchmark(resolve_benchmark(o, grid_override));
    const GridDomain grid = benchmark_grid(b, grid_override);
    const OracleSolution sol = oracle_optima(grid, tabulate(b, grid), b.h);
    auto x_text = [&](std::size_t ix) {
        std::string s;
        const Point xp = grid.x_point(ix);
        for (Eigen::Index i = 0; i < xp.size(); ++i) s += (i ? "," : "") + detail::fmt_double(xp(i));
        return s;
    };
    out << "# benchmark " << b.name << ", h = " << detail::fmt_double(b.h) << '\n';
    out << "# global optimum: s = " << detail::fmt_double(grid.s_value(sol.global.s)) << ", x = ("
        << x_text(sol.global.x) << "), f = " << detail::fmt_double(sol.global_value) << '\n';
    out << "x_index,x,s_star,f_star\n";
    for (std::size_t ix = 0; ix < grid.n_x(); ++ix) {
        out << ix << ",\"" << x_text(ix) << "\"," << detail::fmt_double(grid.s_value(sol.per_x_s[ix])) << ','
            << detail::fmt_double(sol.per_x_value[ix]) << '\n';
    }
    return 0;
}

inline int cmd_validate(const CliOverrides& o, std::ostream& out) {
    std::vector<std::size_t> grid_override;
    const BenchmarkSpec b = make_benchmark(resolve_benchmark(o, grid_override));
    const GridDomain grid = benchmark_grid(b, grid_override);
    const ValidationReport r = validate_benchmark(b, grid);
    out << "benchmark " << b.name << " on " << grid.n_s() << " x " << grid.n_x() << " grid\n";
    out << "  g monotone in s: " << (r.monotone_g ? "yes" : "no") << '\n';
    out << "  g(0, x) <= h:    " << (r.s0_safe ? "yes" : "no") << '\n';
    out << "  L_g' > 0:        " << (r.positive_growth ? "yes" : "no") << " (L_f = " << detail::fmt_double(r.l_f)
        << ", L_g' = " << detail::fmt_double(r.l_g_prime) << ")\n";
    for (const auto& p : r.problems) out << "  problem: " << p << '\n';
    out << (r.ok() ? "valid" : "INVALID") << '\n';
    return r.ok() ? 0 : static_cast<int>(ExitCode::Config);
}

}  // namespace detail

/// Entry point of the `safebo` tool. Returns the process exit code.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout) {
    CLI::App app{"Safe Bayesian optimization with monotone safety functions"};
    app.name("safebo");
    app.require_subcommand(1);
    detail::CliOverrides o;
    auto* run = app.add_subcommand("run", "run one algorithm over the configured seeds");
    auto* oracle = app.add_subcommand("oracle", "print the grid optimum and per-x optima");
    auto* validate = app.add_subcommand("validate", "check benchmark assumptions on the grid");
    auto* compare = app.add_subcommand("compare", "run an M-SafeOpt variant and both baselines");
    detail::add_common_options(*run, o, true);
    detail::add_common_options(*compare, o, true);
    detail::add_common_options(*oracle, o, false);
    detail::add_common_options(*validate, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "safebo: usage error: %s\n", e.what());
        return static_cast<int>(ExitCode::Usage);
    }

    try {
        if (run->parsed()) return detail::cmd_run(o, out);
        if (compare->parsed()) return detail::cmd_compare(o, out);
        if (oracle->parsed()) return detail::cmd_oracle(o, out);
        return detail::cmd_validate(o, out);
    } catch (const detail::UsageError& e) {
        std::fprintf(stderr, "safebo: usage error: %s\n", e.what());
        return static_cast<int>(ExitCode::Usage);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "safebo: config error: %s\n", e.what());
        return static_cast<int>(ExitCode::Config);
    } catch (const IoError& e) {
        std::fprintf(stderr, "safebo: i/o error: %s\n", e.what());
        return static_cast<int>(ExitCode::Config);
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "safebo: numerical failure: %s\n", e.what());
        return static_cast<int>(ExitCode::Numerical);
    }
}

}  // namespace safebo
