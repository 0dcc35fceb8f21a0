#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace safebo {

/// Single-impulse pendulum episode.
///
/// Angle 0 is upright, hanging is +-pi. Dynamics:
///   theta'' = (3 G / (2 l)) sin(theta) + 3 u / (m l^2)
/// The torque u = torque_scale * s acts during the first step only. Each step of
/// length dt is integrated with `substeps` RK4 sub-steps.
struct PendulumParams {
    double gravity = 10.0;
    double mass = 1.0;
    double length = 1.0;
    double dt = 0.05;
    int steps = 100;
    int substeps = 10;
    double torque_scale = 40.0;
};

struct PendulumOutcome {
    double reward = 0.0;     // f: best per-step reward
    double peak_speed = 0.0; // g: max |theta'| over the episode
};

namespace detail {

// Index of the hanging position (odd multiple of pi) interval containing theta.
inline double swing_cell(double theta) {
    return std::floor((theta + std::numbers::pi) / (2.0 * std::numbers::pi));
}

}  // namespace detail

/// Runs one episode from rest at angle `x` with normalized torque `s` in [0, 1].
///
/// Per-step reward: -theta^2 - theta'^2 / 10 - s^2 / 1000 while theta <= 0, and
/// -theta'_up once theta has crossed upright (theta'_up is the velocity at the
/// first step where theta changes sign from <= 0 to > 0).
///
/// Peak speed includes, for every step that passes the hanging position, the
/// speed at the bottom implied by energy conservation; sampling only at step
/// boundaries would miss the true maximum and break monotonicity in s.
inline PendulumOutcome pendulum_episode(double s, double x, const PendulumParams& p = {}) {
    const double k_grav = 3.0 * p.gravity / (2.0 * p.length);
    const double k_torque = 3.0 / (p.mass * p.length * p.length);
    const double h = p.dt / p.substeps;

    double theta = x;
    double omega = 0.0;
    double reward = -INFINITY;
    double peak = 0.0;
    bool crossed_up = false;
    double omega_up = 0.0;

    for (int n = 1; n <= p.steps; ++n) {
        const double u = n == 1 ? p.torque_scale * s : 0.0;
        auto accel = [&](double th) { return k_grav * std::sin(th) + k_torque * u; };
        const double theta_prev = theta;
        for (int k = 0; k < p.substeps; ++k) {
            const double k1t = omega;
            const double k1w = accel(theta);
            const double k2t = omega + 0.5 * h * k1w;
            const double k2w = accel(theta + 0.5 * h * k1t);
            const double k3t = omega + 0.5 * h * k2w;
            const double k3w = accel(theta + 0.5 * h * k2t);
            const double k4t = omega + h * k3w;
            const double k4w = accel(theta + h * k3t);
            theta += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
            omega += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        }

        peak = std::max(peak, std::abs(omega));
        if (detail::swing_cell(theta_prev) != detail::swing_cell(theta)) {
            const double bottom_sq = omega * omega + 2.0 * k_grav * (std::cos(theta) + 1.0);
            peak = std::max(peak, std::sqrt(std::max(0.0, bottom_sq)));
        }

        double step_reward;
        if (theta <= 0.0) {
            step_reward = -theta * theta - omega * omega / 10.0 - s * s / 1000.0;
        } else {
            if (!crossed_up) {
                crossed_up = true;
                omega_up = omega;
            }
            step_reward = -omega_up;
        }
        reward = std::max(reward, step_reward);
    }
    return {reward, peak};
}

}  // namespace safebo
