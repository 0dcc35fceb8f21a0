#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "safebo/benchmarks.hpp"

using namespace safebo;

namespace {

Point pt(std::initializer_list<double> v) {
    Point p(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double c : v) p(i++) = c;
    return p;
}

}  // namespace

TEST(Clinical, KnownValues) {
    const FG v = eval_clinical(pt({0.0, 0.0}));
    EXPECT_DOUBLE_EQ(v.g, 0.5);
    EXPECT_DOUBLE_EQ(v.f, 1.0 / (1.0 + std::exp(1.0)));
    EXPECT_NEAR(v.f, 0.2689414213699951, 1e-15);
    const FG w = eval_clinical(pt({0.5, 1.0}));
    EXPECT_DOUBLE_EQ(w.g, 1.0 / (1.0 + std::exp(-2.0)));
}

TEST(Synthetic2D, KnownValues) {
    const FG v = eval_synthetic2d(pt({0.0, 0.0}));
    EXPECT_NEAR(v.f, 0.015247596578830824, 1e-15);
    for (double x : {0.0, 0.3, 0.9}) EXPECT_EQ(eval_synthetic2d(pt({0.0, x})).g, 0.0);
}

TEST(Synthetic3D, HartmannMinimumOnGrid) {
    double best = INFINITY;
    constexpr int n = 75;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                best = std::min(best, hartmann3(i / (n - 1.0), j / (n - 1.0), k / (n - 1.0)));
    EXPECT_NEAR(best, -3.86278, 1e-3);
    EXPECT_NEAR(hartmann3(0.114614, 0.555649, 0.852547), -3.86278, 1e-5);
}

TEST(Synthetic3D, SafetyShape) {
    const auto b = make_benchmark(BenchmarkId::Synthetic3D);
    const auto grid = benchmark_grid(b, {10});
    const auto truth = tabulate(b, grid);
    for (std::size_t ix = 0; ix < grid.n_x(); ++ix) EXPECT_LE(truth.g[grid.flat(0, ix)], 2.0);
    EXPECT_NEAR(estimate_growth_bounds(grid, truth).l_g_prime, 1.0, 1e-9);
    EXPECT_EQ(eval_synthetic3d(pt({0.2, 0.3, 0.4})).f, -hartmann3(0.2, 0.3, 0.4));
}

TEST(Growth, IdentitySafetyHasUnitSlope) {
    BenchmarkSpec b;
    b.box = {{0.0, 1.0}, {0.0, 1.0}};
    b.h = 0.5;
    b.evaluate = [](const Point& p) { return FG{-p(0), p(0)}; };
    const auto grid = build_grid(b.box, {11, 3});
    const auto gb = estimate_growth_bounds(b, grid);
    EXPECT_NEAR(gb.l_g_prime, 1.0, 1e-9);
    EXPECT_EQ(gb.l_f, 0.0);
}

TEST(Growth, FlatSafetyRejected) {
    BenchmarkSpec b;
    b.box = {{0.0, 1.0}, {0.0, 1.0}};
    b.h = 0.5;
    b.evaluate = [](const Point&) { return FG{0.0, 0.0}; };
    const auto grid = build_grid(b.box, {4, 4});
    EXPECT_THROW(estimate_growth_bounds(b, grid), ConfigError);
    EXPECT_FALSE(validate_benchmark(b, grid).ok());
}

TEST(Pendulum, ZeroTorqueIsSafeEverywhere) {
    const auto b = make_benchmark(BenchmarkId::Pendulum);
    const auto grid = benchmark_grid(b);
    ASSERT_EQ(grid.n_x(), 100u);
    for (std::size_t ix = 0; ix < grid.n_x(); ++ix) {
        EXPECT_LE(b.evaluate(grid.point(0, ix)).g, b.h) << ix;
    }
}

TEST(Pendulum, ZeroTorquePeakMatchesEnergy) {
    // Released from rest at x, the bottom speed is sqrt(2 k (1 + cos x)) with k = 3 G / (2 l).
    const double k = 15.0;
    for (double x : {-2.0 * std::numbers::pi + 0.2, -4.5, -3.5}) {
        const double expected = std::sqrt(2.0 * k * (1.0 + std::cos(x)));
        EXPECT_NEAR(pendulum_episode(0.0, x).peak_speed, expected, 1e-4 * std::max(1.0, expected));
    }
}

TEST(Pendulum, Deterministic) {
    const auto a = pendulum_episode(0.37, -4.0);
    const auto b = pendulum_episode(0.37, -4.0);
    EXPECT_EQ(a.reward, b.reward);
    EXPECT_EQ(a.peak_speed, b.peak_speed);
}

TEST(Oracle, MatchesIndependentScan) {
    const auto b = make_benchmark(BenchmarkId::ClinicalTrial);
    const auto grid = benchmark_grid(b, {40});
    const auto truth = tabulate(b, grid);
    const auto o = oracle_optima(grid, truth, b.h);
    double global = -INFINITY;
    for (std::size_t ix = grid.n_x(); ix-- > 0;) {
        double best = -INFINITY;
        for (std::size_t is = grid.n_s(); is-- > 0;) {
            const FG v = b.evaluate(grid.point(is, ix));
            if (v.g <= b.h) best = std::max(best, v.f);
        }
        EXPECT_EQ(o.per_x_value[ix], best);
        EXPECT_EQ(truth.f[grid.flat(o.per_x_s[ix], ix)], best);
        global = std::max(global, best);
    }
    EXPECT_EQ(o.global_value, global);
    EXPECT_EQ(truth.f[grid.flat(o.global)], global);
}

TEST(Oracle, RequiresSafeZeroRow) {
    const auto grid = build_grid({{0.0, 1.0}, {0.0, 1.0}}, {2, 2});
    TruthTable t{{0, 0, 0, 0}, {5, 5, 0, 5}};
    EXPECT_THROW(oracle_optima(grid, t, 1.0), ConfigError);
}

TEST(Validation, AllBuiltinsPass) {
    for (auto id : {BenchmarkId::ClinicalTrial, BenchmarkId::Synthetic2D, BenchmarkId::Synthetic3D,
                    BenchmarkId::Pendulum}) {
        const auto b = make_benchmark(id);
        const auto r = validate_benchmark(b, benchmark_grid(b));
        EXPECT_TRUE(r.ok()) << b.name << ": " << (r.problems.empty() ? "" : r.problems.front());
        EXPECT_GT(r.l_g_prime, 0.0);
    }
}

TEST(Names, RoundTrip) {
    for (auto id : {BenchmarkId::ClinicalTrial, BenchmarkId::Synthetic2D, BenchmarkId::Synthetic3D,
                    BenchmarkId::Pendulum}) {
        EXPECT_EQ(parse_benchmark(benchmark_name(id)), id);
    }
    EXPECT_FALSE(parse_benchmark("branin"));
    EXPECT_THROW(make_benchmark(BenchmarkId::Custom), ConfigError);
}
