#pragma once

// Reference implementations used only by tests. They avoid the library's code paths:
// the GP uses a dense inverse, the geometry walks every grid point on its own.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double matern52(double variance, const std::vector<double>& ls, const Eigen::VectorXd& a,
                       const Eigen::VectorXd& b) {
    double r2 = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) r2 += std::pow((a(i) - b(i)) / ls[i], 2);
    const double r = std::sqrt(r2);
    return variance * (1.0 + std::sqrt(5.0) * r + 5.0 / 3.0 * r * r) * std::exp(-std::sqrt(5.0) * r);
}

struct DenseGp {
    double variance;
    std::vector<double> ls;
    double noise;
    std::vector<Eigen::VectorXd> xs;
    std::vector<double> ys;

    // (mean, variance) at z via (K + noise I)^-1 formed explicitly.
    std::pair<double, double> posterior(const Eigen::VectorXd& z) const {
        const auto n = static_cast<Eigen::Index>(xs.size());
        if (n == 0) return {0.0, variance};
        Eigen::MatrixXd k(n, n);
        Eigen::VectorXd kz(n), y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) k(i, j) = matern52(variance, ls, xs[i], xs[j]);
            k(i, i) += noise;
            kz(i) = matern52(variance, ls, xs[i], z);
            y(i) = ys[i];
        }
        const Eigen::MatrixXd inv = k.fullPivLu().inverse();
        return {kz.dot(inv * y), variance - kz.dot(inv * kz)};
    }

    double log_det_gain() const {
        const auto n = static_cast<Eigen::Index>(xs.size());
        if (n == 0) return 0.0;
        Eigen::MatrixXd a(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) a(i, j) = matern52(variance, ls, xs[i], xs[j]) / noise;
            a(i, i) += 1.0;
        }
        return 0.5 * std::log(a.fullPivLu().determinant());
    }
};

// A 2D grid given directly by arrays indexed [x][s].
struct Fields {
    std::size_t ns = 0, nx = 0;
    std::vector<double> s_values;
    std::vector<std::vector<double>> mu_f, sd_f, mu_g, sd_g;
    double beta_f = 3.0, beta_g = 3.0;

    double ucb_f(std::size_t s, std::size_t x) const { return mu_f[x][s] + beta_f * sd_f[x][s]; }
    double lcb_f(std::size_t s, std::size_t x) const { return mu_f[x][s] - beta_f * sd_f[x][s]; }
    double ucb_g(std::size_t s, std::size_t x) const { return mu_g[x][s] + beta_g * sd_g[x][s]; }
    double lcb_g(std::size_t s, std::size_t x) const { return mu_g[x][s] - beta_g * sd_g[x][s]; }
};

enum class Mode { Case1, Case2, Case3, MSafeUcb };

struct Params {
    Mode mode = Mode::Case1;
    double h = 0.0;
    double l_f = 0.0;
    double l_g = 1.0;
    bool refined = false;
};

struct Result {
    std::vector<bool> surviving;
    std::vector<std::pair<std::size_t, std::size_t>> g_set;  // (s, x)
    std::vector<std::pair<std::size_t, std::size_t>> m_set;
    std::optional<std::pair<std::size_t, std::size_t>> pick;
};

// Point-by-point transcription of the round procedure.
inline Result round(const Fields& F, const Params& P) {
    Result out;
    auto safe = [&](std::size_t s, std::size_t x) { return s == 0 || F.ucb_g(s, x) <= P.h; };

    double best_lcb = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < F.nx; ++x)
        for (std::size_t s = 0; s < F.ns; ++s)
            if (safe(s, x)) best_lcb = std::max(best_lcb, F.lcb_f(s, x));

    std::vector<std::size_t> b(F.nx, 0), shat(F.nx, 0);
    std::vector<double> us(F.nx);
    for (std::size_t x = 0; x < F.nx; ++x) {
        for (std::size_t s = 0; s < F.ns; ++s)
            if (F.ucb_g(s, x) <= P.h) b[x] = s;
        // largest s in [s_b, 1] with LCB^g(s_b) + L_g' (s - s_b) <= h
        const double sb = F.s_values[b[x]];
        const double room = P.h - F.lcb_g(b[x], x);
        us[x] = room <= 0.0 ? sb : std::min(1.0, sb + room / P.l_g);
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s <= b[x]; ++s) {
            const double u = P.mode == Mode::MSafeUcb ? F.ucb_g(s, x) : F.ucb_f(s, x);
            if (u > best) {
                best = u;
                shat[x] = s;
            }
        }
    }

    out.surviving.assign(F.nx, true);
    for (std::size_t x = 0; x < F.nx; ++x) {
        double max_ucb = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s <= b[x]; ++s) max_ucb = std::max(max_ucb, F.ucb_f(s, x));
        const double optimistic = F.ucb_f(b[x], x) + P.l_f * std::abs(us[x] - F.s_values[b[x]]);
        const bool cond_i = max_ucb < best_lcb;
        const bool cond_ii = optimistic <= best_lcb;
        if (P.mode == Mode::Case1) out.surviving[x] = !(cond_i && cond_ii);
        if (P.mode == Mode::Case3) out.surviving[x] = !cond_ii;
    }

    std::vector<std::vector<int>> in_g(F.nx, std::vector<int>(F.ns, 0)), in_m = in_g;
    for (std::size_t x = 0; x < F.nx; ++x) {
        if (!out.surviving[x]) continue;
        const double optimistic = F.ucb_f(b[x], x) + P.l_f * std::abs(us[x] - F.s_values[b[x]]);
        double own_lcb = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s <= b[x]; ++s) own_lcb = std::max(own_lcb, F.lcb_f(s, x));
        bool expand = false;
        switch (P.mode) {
            case Mode::Case1: expand = optimistic > best_lcb; break;
            case Mode::Case2: expand = optimistic > own_lcb; break;
            case Mode::Case3: expand = true; break;
            case Mode::MSafeUcb: expand = b[x] != F.ns - 1; break;
        }
        if (expand) in_g[x][b[x]] = 1;
        if (P.mode == Mode::Case1 || P.mode == Mode::Case2) in_m[x][shat[x]] = 1;
    }

    double best_acq = -1.0;
    for (std::size_t x = 0; x < F.nx; ++x) {
        for (std::size_t s = 0; s < F.ns; ++s) {
            if (in_g[x][s]) out.g_set.emplace_back(s, x);
            if (in_m[x][s]) out.m_set.emplace_back(s, x);
            if (!in_g[x][s] && !in_m[x][s]) continue;
            const double wf = F.beta_f * F.sd_f[x][s];
            const double wg = F.beta_g * F.sd_g[x][s];
            double acq;
            if (in_g[x][s]) {
                if (P.mode == Mode::MSafeUcb) acq = wg;
                else if (P.refined) acq = std::max(wf, P.l_f / P.l_g * wg);
                else acq = std::max(wf, wg);
            } else {
                acq = wf;
            }
            if (acq > best_acq) {
                best_acq = acq;
                out.pick = std::make_pair(s, x);
            }
        }
    }
    return out;
}

inline Fields random_fields(std::mt19937_64& rng, std::size_t ns, std::size_t nx) {
    std::uniform_real_distribution<double> mu(-1.0, 1.0), sd(0.01, 0.5), beta(0.5, 3.0);
    Fields F;
    F.ns = ns;
    F.nx = nx;
    for (std::size_t i = 0; i < ns; ++i) F.s_values.push_back(static_cast<double>(i) / static_cast<double>(ns - 1));
    auto table = [&](auto& dist) {
        std::vector<std::vector<double>> t(nx, std::vector<double>(ns));
        for (auto& row : t)
            for (auto& v : row) v = dist(rng);
        return t;
    };
    F.mu_f = table(mu);
    F.sd_f = table(sd);
    F.mu_g = table(mu);
    F.sd_g = table(sd);
    // g trends upward in s so boundaries land in the interior.
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t s = 0; s < ns; ++s) F.mu_g[x][s] += 0.6 * static_cast<double>(s);
    F.beta_f = beta(rng);
    F.beta_g = beta(rng);
    return F;
}

}  // namespace oracle
