#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "safebo/errors.hpp"
#include "safebo/gp_model.hpp"
#include "safebo/grid.hpp"

namespace safebo {

struct ConstantBeta {
    double value = 3.0;
};

/// beta_t = B + R * sqrt(2 (gamma_{t-1} + 1 + ln(2 / delta))).
struct TheoreticalBeta {
    double rkhs_bound = 1.0;  // B
    double noise_bound = 0.0; // R (sub-Gaussian parameter)
    double delta = 0.1;
};

using BetaSchedule = std::variant<ConstantBeta, TheoreticalBeta>;

inline void validate(const BetaSchedule& schedule) {
    if (const auto* c = std::get_if<ConstantBeta>(&schedule)) {
        if (!(c->value > 0.0) || !std::isfinite(c->value)) {
            throw ConfigError("constant beta must be positive");
        }
        return;
    }
    const auto& th = std::get<TheoreticalBeta>(schedule);
    if (!(th.delta > 0.0 && th.delta < 1.0)) {
        throw ConfigError("beta schedule delta must lie in (0, 1), got " + std::to_string(th.delta));
    }
    if (!(th.rkhs_bound >= 0.0) || !(th.noise_bound >= 0.0)) {
        throw ConfigError("beta schedule bounds must be nonnegative");
    }
}

/// beta_t for round t >= 1. `gamma_prev` stands in for gamma_{t-1} and is ignored by ConstantBeta.
inline double beta_at(const BetaSchedule& schedule, std::size_t t, double gamma_prev) {
    validate(schedule);
    if (t < 1) {
        throw ContractViolation("beta_at: rounds are numbered from 1");
    }
    if (const auto* c = std::get_if<ConstantBeta>(&schedule)) {
        return c->value;
    }
    if (!(gamma_prev >= 0.0)) {
        throw ContractViolation("beta_at: information gain must be nonnegative");
    }
    const auto& th = std::get<TheoreticalBeta>(schedule);
    const double beta = th.rkhs_bound + th.noise_bound * std::sqrt(2.0 * (gamma_prev + 1.0 + std::log(2.0 / th.delta)));
    if (!(beta > 0.0)) {
        throw ConfigError("beta schedule produced a non-positive value");
    }
    return beta;
}

/// Posterior mean, stddev and the beta-scaled confidence band over every grid point.
/// Storage uses the grid's flat (x-major) order.
class ConfidenceField {
public:
    ConfidenceField() = default;

    /// Builds a field from raw per-point arrays (flat order). Used by tests and baselines.
    static ConfidenceField from_arrays(std::size_t n_s, std::size_t n_x, std::vector<double> mu,
                                       std::vector<double> sigma, double beta) {
        if (mu.size() != n_s * n_x || sigma.size() != n_s * n_x) {
            throw ContractViolation("confidence field arrays do not match the grid size");
        }
        if (!(beta >= 0.0)) {
            throw ContractViolation("confidence field beta must be nonnegative");
        }
        ConfidenceField f;
        f.n_s_ = n_s;
        f.n_x_ = n_x;
        f.beta_ = beta;
        f.mu_ = std::move(mu);
        f.sigma_ = std::move(sigma);
        f.ucb_.resize(f.mu_.size());
        f.lcb_.resize(f.mu_.size());
        for (std::size_t i = 0; i < f.mu_.size(); ++i) {
            const double w = beta * f.sigma_[i];
            f.ucb_[i] = f.mu_[i] + w;
            f.lcb_[i] = f.mu_[i] - w;
        }
        return f;
    }

    std::size_t n_s() const noexcept { return n_s_; }
    std::size_t n_x() const noexcept { return n_x_; }
    std::size_t size() const noexcept { return mu_.size(); }
    double beta() const noexcept { return beta_; }

    double mu(std::size_t is, std::size_t ix) const { return mu_[ix * n_s_ + is]; }
    double sigma(std::size_t is, std::size_t ix) const { return sigma_[ix * n_s_ + is]; }
    double ucb(std::size_t is, std::size_t ix) const { return ucb_[ix * n_s_ + is]; }
    double lcb(std::size_t is, std::size_t ix) const { return lcb_[ix * n_s_ + is]; }
    /// beta * sigma, the half-width of the band.
    double width(std::size_t is, std::size_t ix) const { return beta_ * sigma_[ix * n_s_ + is]; }

    const std::vector<double>& mu() const noexcept { return mu_; }
    const std::vector<double>& sigma() const noexcept { return sigma_; }
    const std::vector<double>& ucb() const noexcept { return ucb_; }
    const std::vector<double>& lcb() const noexcept { return lcb_; }

private:
    std::size_t n_s_ = 0;
    std::size_t n_x_ = 0;
    double beta_ = 0.0;
    std::vector<double> mu_, sigma_, ucb_, lcb_;
};

/// One posterior sweep of `model` over every grid point (unit coordinates).
inline ConfidenceField build_field(const GpModel& model, const GridDomain& grid, double beta) {
    if (!(beta >= 0.0)) {
        throw ContractViolation("build_field: beta must be nonnegative");
    }
    const Posterior post = model.posterior(grid.unit_points());
    std::vector<double> mu(post.mean.data(), post.mean.data() + post.mean.size());
    std::vector<double> sigma(post.stddev.data(), post.stddev.data() + post.stddev.size());
    return ConfidenceField::from_arrays(grid.n_s(), grid.n_x(), std::move(mu), std::move(sigma), beta);
}

}  // namespace safebo
