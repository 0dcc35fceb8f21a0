#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "safebo/errors.hpp"

namespace safebo {

using Point = Eigen::VectorXd;

enum class KernelFamily { Matern52, SquaredExponential };

/// Stationary kernel with an output scale and one lengthscale per input dimension.
///
/// Distances are anisotropic: r^2 = sum_i ((a_i - b_i) / l_i)^2.
struct KernelSpec {
    KernelFamily family = KernelFamily::Matern52;
    double variance = 1.0;
    std::vector<double> lengthscales;

    /// Validating constructor; throws ConfigError on non-positive parameters.
    static KernelSpec make(KernelFamily family, double variance, std::vector<double> lengthscales) {
        if (!(variance > 0.0) || !std::isfinite(variance)) {
            throw ConfigError("kernel variance must be positive, got " + std::to_string(variance));
        }
        if (lengthscales.empty()) {
            throw ConfigError("kernel needs at least one lengthscale");
        }
        for (double l : lengthscales) {
            if (!(l > 0.0) || !std::isfinite(l)) {
                throw ConfigError("kernel lengthscales must be positive, got " + std::to_string(l));
            }
        }
        return KernelSpec{family, variance, std::move(lengthscales)};
    }

    /// Same lengthscale in every one of `dims` dimensions.
    static KernelSpec isotropic(KernelFamily family, double variance, double lengthscale, std::size_t dims) {
        return make(family, variance, std::vector<double>(dims, lengthscale));
    }

    std::size_t dims() const noexcept { return lengthscales.size(); }
};

namespace detail {

inline double kernel_from_sq_dist(const KernelSpec& spec, double r2) {
    switch (spec.family) {
        case KernelFamily::Matern52: {
            const double r = std::sqrt(r2);
            const double sr = std::sqrt(5.0) * r;
            return spec.variance * (1.0 + sr + 5.0 * r2 / 3.0) * std::exp(-sr);
        }
        case KernelFamily::SquaredExponential:
            return spec.variance * std::exp(-0.5 * r2);
    }
    return 0.0;
}

// Symmetric in (a, b): each term squares the difference, so the sum is bit-identical.
template <typename A, typename B>
double scaled_sq_dist(const KernelSpec& spec, const A& a, const B& b) {
    double r2 = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double d = (a[i] - b[i]) / spec.lengthscales[static_cast<std::size_t>(i)];
        r2 += d * d;
    }
    return r2;
}

}  // namespace detail

/// k(z1, z2). Throws ContractViolation if either point does not have spec.dims() coordinates.
template <typename A, typename B>
double kernel_eval(const KernelSpec& spec, const Eigen::MatrixBase<A>& z1, const Eigen::MatrixBase<B>& z2) {
    const auto dims = static_cast<Eigen::Index>(spec.dims());
    if (z1.size() != dims || z2.size() != dims) {
        throw ContractViolation("kernel_eval: point dimension " + std::to_string(z1.size()) + "/" +
                                std::to_string(z2.size()) + " does not match kernel dimension " +
                                std::to_string(dims));
    }
    return detail::kernel_from_sq_dist(spec, detail::scaled_sq_dist(spec, z1, z2));
}

/// Prior variance k(z, z); constant for stationary kernels.
inline double prior_variance(const KernelSpec& spec) noexcept { return spec.variance; }

/// Gram matrix over the rows of `points`.
inline Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& points) {
    const Eigen::Index n = points.rows();
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = spec.variance;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = kernel_eval(spec, points.row(i).transpose(), points.row(j).transpose());
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

/// Cross-covariance matrix, rows indexed by `a`, columns by `b`.
inline Eigen::MatrixXd cross_covariance(const KernelSpec& spec, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd k(a.rows(), b.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.rows(); ++j) {
            k(i, j) = kernel_eval(spec, a.row(i).transpose(), b.row(j).transpose());
        }
    }
    return k;
}

}  // namespace safebo
