#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "safebo/errors.hpp"
#include "safebo/kernel.hpp"

namespace safebo {

struct Observation {
    Point point;
    double value = 0.0;
};

struct Posterior {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;
};

/// Zero-mean exact GP posterior for a single function.
///
/// The Cholesky factor of (K + lambda I) is rebuilt on every observation. If the
/// plain factorization fails, a diagonal jitter is added, starting at 1e-10 and
/// growing by 10x up to 1e-4; beyond that a NumericalError is thrown.
class GpModel {
public:
    static constexpr double kJitterStart = 1e-10;
    static constexpr double kJitterMax = 1e-4;

    GpModel(KernelSpec kernel, double noise_variance)
        : kernel_(std::move(kernel)), noise_variance_(noise_variance),
          points_(0, static_cast<Eigen::Index>(kernel_.dims())) {
        if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
            throw ConfigError("GP noise variance must be nonnegative");
        }
    }

    const KernelSpec& kernel() const noexcept { return kernel_; }
    double noise_variance() const noexcept { return noise_variance_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
    const Eigen::MatrixXd& points() const noexcept { return points_; }
    const Eigen::VectorXd& values() const noexcept { return values_; }
    double jitter() const noexcept { return jitter_; }

    void add_observation(const Observation& obs) {
        if (obs.point.size() != static_cast<Eigen::Index>(kernel_.dims())) {
            throw ContractViolation("observation dimension does not match kernel dimension");
        }
        const Eigen::Index n = points_.rows();
        points_.conservativeResize(n + 1, Eigen::NoChange);
        points_.row(n) = obs.point.transpose();
        values_.conservativeResize(n + 1);
        values_(n) = obs.value;
        refactor();
    }

    /// Posterior mean and standard deviation at each row of `queries`.
    Posterior posterior(const Eigen::MatrixXd& queries) const {
        const Eigen::Index m = queries.rows();
        Posterior out{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Constant(m, std::sqrt(kernel_.variance))};
        if (points_.rows() == 0) {
            return out;
        }
        const Eigen::MatrixXd k_star = cross_covariance(kernel_, points_, queries);  // n x m
        out.mean = k_star.transpose() * alpha_;
        const Eigen::MatrixXd v = factor_.matrixL().solve(k_star);
        const Eigen::VectorXd explained = v.colwise().squaredNorm().transpose();
        for (Eigen::Index i = 0; i < m; ++i) {
            const double var = std::clamp(kernel_.variance - explained(i), 0.0, kernel_.variance);
            out.stddev(i) = std::sqrt(var);
        }
        if (!out.mean.allFinite() || !out.stddev.allFinite()) {
            throw NumericalError(diagnostic("non-finite posterior"), condition_estimate());
        }
        return out;
    }

    Posterior posterior(const Point& query) const {
        Eigen::MatrixXd q(1, query.size());
        q.row(0) = query.transpose();
        return posterior(q);
    }

    /// 0.5 * log det(I + K / lambda) over the observed points.
    double empirical_info_gain() const {
        const Eigen::Index n = points_.rows();
        if (n == 0) {
            return 0.0;
        }
        if (!(noise_variance_ > 0.0)) {
            throw ConfigError("information gain needs a positive noise variance");
        }
        Eigen::MatrixXd a = gram_matrix(kernel_, points_) / noise_variance_;
        a.diagonal().array() += 1.0;
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        if (llt.info() != Eigen::Success) {
            throw NumericalError(diagnostic("information-gain factorization failed"));
        }
        const Eigen::MatrixXd l = llt.matrixL();
        return l.diagonal().array().log().sum();
    }

    /// Reciprocal of the factor's rcond estimate; 0 with no observations.
    double condition_estimate() const {
        if (points_.rows() == 0) {
            return 0.0;
        }
        const double rc = factor_.rcond();
        return rc > 0.0 ? 1.0 / rc : INFINITY;
    }

private:
    void refactor() {
        Eigen::MatrixXd k = gram_matrix(kernel_, points_);
        k.diagonal().array() += noise_variance_;
        double jitter = 0.0;
        for (;;) {
            Eigen::MatrixXd kj = k;
            kj.diagonal().array() += jitter;
            factor_.compute(kj);
            if (factor_.info() == Eigen::Success && factor_.matrixLLT().diagonal().allFinite() &&
                (factor_.matrixLLT().diagonal().array() > 0.0).all()) {
                break;
            }
            jitter = jitter == 0.0 ? kJitterStart : jitter * 10.0;
            if (jitter > kJitterMax * (1.0 + 1e-9)) {
                throw NumericalError(diagnostic("Cholesky failed after jitter escalation"));
            }
        }
        jitter_ = jitter;
        alpha_ = factor_.solve(values_);
        if (!alpha_.allFinite()) {
            throw NumericalError(diagnostic("non-finite solve"), condition_estimate());
        }
    }

    std::string diagnostic(const char* what) const {
        std::ostringstream os;
        os << what << " (n=" << points_.rows() << ", noise=" << noise_variance_ << ", jitter=" << jitter_ << ")";
        return os.str();
    }

    KernelSpec kernel_;
    double noise_variance_;
    Eigen::MatrixXd points_;
    Eigen::VectorXd values_;
    Eigen::LLT<Eigen::MatrixXd> factor_;
    Eigen::VectorXd alpha_;
    double jitter_ = 0.0;
};

}  // namespace safebo
