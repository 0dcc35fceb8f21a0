#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safebo/errors.hpp"
#include "safebo/grid.hpp"
#include "safebo/kernel.hpp"
#include "safebo/pendulum.hpp"

namespace safebo {

struct FG {
    double f = 0.0;
    double g = 0.0;
};

enum class BenchmarkId { ClinicalTrial, Synthetic2D, Synthetic3D, Pendulum, Custom };

// ---------------------------------------------------------------------------
// Objective / safety pairs. Points are (s, x_1, ..., x_d) in box coordinates.
// ---------------------------------------------------------------------------

/// Dose efficacy (f) and dose toxicity (g) logistic models; s and x are the two doses.
inline FG eval_clinical(const Point& p) {
    constexpr double tf0 = 1.0, tf1 = 2.0, tf2 = 1.0, tf3 = -4.0, tf4 = -1.0;
    constexpr double tg1 = 2.0, tg2 = 1.0;
    const double d1 = p(0);
    const double d2 = p(1);
    const double f = 1.0 / (1.0 + std::exp(tf0 - tf1 * d1 - tf2 * d2 - tf3 * d1 * d1 - tf4 * d2 * d2));
    const double g = 1.0 / (1.0 + std::exp(-tg1 * d1 - tg2 * d2));
    return {f, g};
}

/// Branin-type objective on the raw unit square, with a safety function linear in s.
inline FG eval_synthetic2d(const Point& p) {
    constexpr double pi = std::numbers::pi;
    const double s = p(0);
    const double x = p(1);
    const double alpha = 1.0 / 51.95;
    const double delta = -44.81;
    const double b = 5.1 / (4.0 * pi * pi);
    const double c = 5.0 / pi;
    const double t = 1.0 / (8.0 * pi);
    const double inner = x - b * s * s + c * s - 6.0;
    const double f = alpha * (inner * inner + 10.0 * (1.0 - t) * std::cos(s) + delta);
    const double y = x + 1.0 / 3.0;
    const double g = 2.0 * s * (std::exp(y) * std::sin(10.0 * y) + std::sin(5.0 * y) + 5.0) / 3.0;
    return {f, g};
}

/// Standard Hartmann-3 (minimization form; global minimum about -3.86278).
inline double hartmann3(double z0, double z1, double z2) {
    static constexpr std::array<double, 4> alpha{1.0, 1.2, 3.0, 3.2};
    static constexpr std::array<std::array<double, 3>, 4> a{{
        {3.0, 10.0, 30.0},
        {0.1, 10.0, 35.0},
        {3.0, 10.0, 30.0},
        {0.1, 10.0, 35.0},
    }};
    static constexpr std::array<std::array<double, 3>, 4> pm{{
        {0.3689, 0.1170, 0.2673},
        {0.4699, 0.4387, 0.7470},
        {0.1091, 0.8732, 0.5547},
        {0.0381, 0.5743, 0.8828},
    }};
    const std::array<double, 3> z{z0, z1, z2};
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double e = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            const double d = z[j] - pm[i][j];
            e += a[i][j] * d * d;
        }
        sum += alpha[i] * std::exp(-e);
    }
    return -sum;
}

/// f is Hartmann-3 negated so that maximizing f finds its global minimum; g = s + x1^2 + x2^3.
inline FG eval_synthetic3d(const Point& p) {
    const double f = -hartmann3(p(0), p(1), p(2));
    const double g = p(0) + p(1) * p(1) + p(2) * p(2) * p(2);
    return {f, g};
}

inline FG eval_pendulum(const Point& p) {
    const PendulumOutcome o = pendulum_episode(p(0), p(1));
    return {o.reward, o.peak_speed};
}

// ---------------------------------------------------------------------------
// Benchmark descriptions.
// ---------------------------------------------------------------------------

struct BenchmarkSpec {
    BenchmarkId id = BenchmarkId::Custom;
    std::string name;
    double h = 0.0;
    std::vector<Interval> box;
    std::vector<std::size_t> resolution;
    double noise_std_f = 0.0;  // observation noise added by the harness
    double noise_std_g = 0.0;
    KernelSpec kernel_f;
    KernelSpec kernel_g;
    double gp_noise_f = 1e-5;  // lambda used by the GP models
    double gp_noise_g = 1e-5;
    std::function<FG(const Point&)> evaluate;
    std::optional<double> l_f;  // supplied growth bounds; estimated from the grid when empty
    std::optional<double> l_g_prime;

    std::size_t dims() const noexcept { return box.size(); }
};

inline const char* benchmark_name(BenchmarkId id) {
    switch (id) {
        case BenchmarkId::ClinicalTrial: return "clinical";
        case BenchmarkId::Synthetic2D: return "synthetic2d";
        case BenchmarkId::Synthetic3D: return "synthetic3d";
        case BenchmarkId::Pendulum: return "pendulum";
        case BenchmarkId::Custom: return "custom";
    }
    return "?";
}

inline std::optional<BenchmarkId> parse_benchmark(std::string_view name) {
    if (name == "clinical" || name == "clinical_trial") return BenchmarkId::ClinicalTrial;
    if (name == "synthetic2d" || name == "syn2d") return BenchmarkId::Synthetic2D;
    if (name == "synthetic3d" || name == "syn3d") return BenchmarkId::Synthetic3D;
    if (name == "pendulum") return BenchmarkId::Pendulum;
    return std::nullopt;
}

/// Default configuration of the built-in benchmarks. GP kernels act on unit-box coordinates.
inline BenchmarkSpec make_benchmark(BenchmarkId id) {
    BenchmarkSpec b;
    b.id = id;
    b.name = benchmark_name(id);
    switch (id) {
        case BenchmarkId::ClinicalTrial:
            b.h = 0.9;
            b.box = {{0.0, 1.0}, {0.0, 2.0}};
            b.resolution = {200, 200};
            b.kernel_f = b.kernel_g = KernelSpec::isotropic(KernelFamily::Matern52, 1.0, 0.2, 2);
            b.evaluate = eval_clinical;
            break;
        case BenchmarkId::Synthetic2D:
            b.h = 2.0;
            b.box = {{0.0, 1.0}, {0.0, 1.0}};
            b.resolution = {200, 200};
            b.kernel_f = b.kernel_g = KernelSpec::isotropic(KernelFamily::Matern52, 9.0, 0.2, 2);
            b.evaluate = eval_synthetic2d;
            break;
        case BenchmarkId::Synthetic3D:
            b.h = 2.0;
            b.box = {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
            b.resolution = {75, 75, 75};
            b.kernel_f = b.kernel_g = KernelSpec::isotropic(KernelFamily::Matern52, 1.0, 0.2, 3);
            b.evaluate = eval_synthetic3d;
            break;
        case BenchmarkId::Pendulum: {
            constexpr double pi = std::numbers::pi;
            b.h = 9.0;
            b.box = {{0.0, 1.0}, {-2.0 * pi + pi / 36.0, -pi - pi / 36.0}};
            b.resolution = {100, 100};
            b.kernel_f = b.kernel_g = KernelSpec::isotropic(KernelFamily::Matern52, 25.0, 0.2, 2);
            b.noise_std_f = b.noise_std_g = std::sqrt(0.05);
            b.gp_noise_f = b.gp_noise_g = 0.05;
            b.evaluate = eval_pendulum;
            break;
        }
        case BenchmarkId::Custom:
            throw ConfigError("custom benchmarks have no default configuration");
    }
    return b;
}

inline GridDomain benchmark_grid(const BenchmarkSpec& b, const std::vector<std::size_t>& resolution = {}) {
    if (resolution.empty()) return build_grid(b.box, b.resolution);
    if (resolution.size() == 1) return build_grid(b.box, std::vector<std::size_t>(b.dims(), resolution[0]));
    return build_grid(b.box, resolution);
}

// ---------------------------------------------------------------------------
// Ground truth on a grid.
// ---------------------------------------------------------------------------

/// True f and g at every grid point, flat order.
struct TruthTable {
    std::vector<double> f;
    std::vector<double> g;
};

inline TruthTable tabulate(const BenchmarkSpec& b, const GridDomain& grid) {
    if (!b.evaluate) throw ConfigError("benchmark '" + b.name + "' has no evaluator");
    if (grid.dims() != b.dims()) throw ContractViolation("grid dimension does not match benchmark");
    TruthTable t;
    t.f.resize(grid.size());
    t.g.resize(grid.size());
    for (std::size_t ix = 0; ix < grid.n_x(); ++ix) {
        for (std::size_t is = 0; is < grid.n_s(); ++is) {
            const FG v = b.evaluate(grid.point(is, ix));
            t.f[grid.flat(is, ix)] = v.f;
            t.g[grid.flat(is, ix)] = v.g;
        }
    }
    return t;
}

struct OracleSolution {
    GridIndex global;
    double global_value = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> per_x_s;
    std::vector<double> per_x_value;
    std::vector<bool> safe_mask;  // flat order, true g <= h
};

/// Exhaustive scan for the safe global and per-x optima; ties go to the smallest flat index.
inline OracleSolution oracle_optima(const GridDomain& grid, const TruthTable& truth, double h) {
    OracleSolution o;
    o.safe_mask.assign(grid.size(), false);
    o.per_x_s.assign(grid.n_x(), 0);
    o.per_x_value.assign(grid.n_x(), -std::numeric_limits<double>::infinity());
    bool found_global = false;
    for (std::size_t ix = 0; ix < grid.n_x(); ++ix) {
        bool found = false;
        for (std::size_t is = 0; is < grid.n_s(); ++is) {
            const std::size_t k = grid.flat(is, ix);
            if (!(truth.g[k] <= h)) continue;
            o.safe_mask[k] = true;
            if (!found || truth.f[k] > o.per_x_value[ix]) {
                o.per_x_value[ix] = truth.f[k];
                o.per_x_s[ix] = is;
                found = true;
            }
        }
        if (!found) {
            throw ConfigError("no safe s for x-index " + std::to_string(ix) + " (s = 0 must be safe)");
        }
        if (!found_global || o.per_x_value[ix] > o.global_value) {
            o.global_value = o.per_x_value[ix];
            o.global = {o.per_x_s[ix], ix};
            found_global = true;
        }
    }
    return o;
}

inline OracleSolution oracle_optima(const BenchmarkSpec& b, const GridDomain& grid) {
    return oracle_optima(grid, tabulate(b, grid), b.h);
}

struct GrowthBounds {
    double l_f = 0.0;
    double l_g_prime = 0.0;
};

/// Finite-difference growth rates along s over adjacent grid pairs:
/// L_f is the largest f slope (clamped at 0), L_g' the smallest g slope.
/// Throws ConfigError when L_g' <= 0.
inline GrowthBounds estimate_growth_bounds(const GridDomain& grid, const TruthTable& truth) {
    GrowthBounds gb{0.0, std::numeric_limits<double>::infinity()};
    for (std::size_t ix = 0; ix < grid.n_x(); ++ix) {
        for (std::size_t is = 1; is < grid.n_s(); ++is) {
            const double ds = grid.s_value(is) - grid.s_value(is - 1);
            const std::size_t lo = grid.flat(is - 1, ix);
            const std::size_t hi = grid.flat(is, ix);
            gb.l_f = std::max(gb.l_f, (truth.f[hi] - truth.f[lo]) / ds);
            gb.l_g_prime = std::min(gb.l_g_prime, (truth.g[hi] - truth.g[lo]) / ds);
        }
    }
    if (!(gb.l_g_prime > 0.0)) {
        throw ConfigError("estimated L_g' = " + std::to_string(gb.l_g_prime) + " is not positive");
    }
    return gb;
}

inline GrowthBounds estimate_growth_bounds(const BenchmarkSpec& b, const GridDomain& grid) {
    return estimate_growth_bounds(grid, tabulate(b, grid));
}

/// Growth bounds used by the algorithm: supplied values win over grid estimates.
inline GrowthBounds resolve_growth_bounds(const BenchmarkSpec& b, const GridDomain& grid, const TruthTable& truth) {
    if (b.l_f && b.l_g_prime) return {*b.l_f, *b.l_g_prime};
    GrowthBounds gb = estimate_growth_bounds(grid, truth);
    if (b.l_f) gb.l_f = *b.l_f;
    if (b.l_g_prime) gb.l_g_prime = *b.l_g_prime;
    return gb;
}

struct ValidationReport {
    bool monotone_g = true;
    bool s0_safe = true;
    bool positive_growth = true;
    double l_f = 0.0;
    double l_g_prime = 0.0;
    std::vector<std::string> problems;

    bool ok() const noexcept { return monotone_g && s0_safe && positive_growth; }
};

/// Checks that g is nondecreasing in s at every grid x, that the s = 0 row is safe,
/// and that the estimated L_g' is positive.
inline ValidationReport validate_benchmark(const BenchmarkSpec& b, const GridDomain& grid, const TruthTable& truth) {
    ValidationReport r;
    for (std::size_t ix = 0; ix < grid.n_x(); ++ix) {
        if (!(truth.g[grid.flat(0, ix)] <= b.h)) {
            if (r.s0_safe) r.problems.push_back("g(0, x) > h at x-index " + std::to_string(ix));
            r.s0_safe = false;
        }
        for (std::size_t is = 1; is < grid.n_s(); ++is) {
            if (truth.g[grid.flat(is, ix)] < truth.g[grid.flat(is - 1, ix)]) {
                if (r.monotone_g) {
                    r.problems.push_back("g decreases in s at (" + std::to_string(is) + ", " + std::to_string(ix) + ")");
                }
                r.monotone_g = false;
            }
        }
    }
    try {
        const GrowthBounds gb = estimate_growth_bounds(grid, truth);
        r.l_f = gb.l_f;
        r.l_g_prime = gb.l_g_prime;
    } catch (const ConfigError& e) {
        r.positive_growth = false;
        r.problems.emplace_back(e.what());
    }
    return r;
}

inline ValidationReport validate_benchmark(const BenchmarkSpec& b, const GridDomain& grid) {
    return validate_benchmark(b, grid, tabulate(b, grid));
}

}  // namespace safebo
