#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "safebo/errors.hpp"
#include "safebo/kernel.hpp"

namespace safebo {

/// (s-index, x-index) pair on a GridDomain.
struct GridIndex {
    std::size_t s = 0;
    std::size_t x = 0;

    friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Tensor grid over D_S x D_X.
///
/// Dimension 0 is the safety variable s on [0, 1]; the remaining dimensions span D_X.
/// x-indices enumerate the D_X grid with the first x-dimension varying slowest.
/// Flat indices are x-major: flat = x * n_s + s, so one x column is contiguous and
/// "smallest flat index" orders by x first, then by s.
class GridDomain {
public:
    GridDomain() = default;

    /// Linear spacing inclusive of endpoints. `box[0]` must be exactly [0, 1].
    static GridDomain build(std::vector<Interval> box, std::vector<std::size_t> resolution) {
        if (box.size() < 2) {
            throw ConfigError("grid needs the s dimension plus at least one x dimension");
        }
        if (box.size() != resolution.size()) {
            throw ConfigError("grid box and resolution have different dimension counts");
        }
        if (box[0].lo != 0.0 || box[0].hi != 1.0) {
            throw ConfigError("the s dimension must span exactly [0, 1]");
        }
        GridDomain g;
        g.box_ = box;
        g.resolution_ = resolution;
        for (std::size_t k = 0; k < box.size(); ++k) {
            if (!(box[k].lo < box[k].hi)) {
                throw ConfigError("grid dimension " + std::to_string(k) + " has lo >= hi");
            }
            if (resolution[k] < 2) {
                throw ConfigError("grid resolution must be at least 2 per dimension");
            }
        }
        g.s_values_ = linspace(0.0, 1.0, resolution[0]);
        for (std::size_t k = 1; k < box.size(); ++k) {
            g.axes_.push_back(linspace(box[k].lo, box[k].hi, resolution[k]));
        }
        g.n_x_ = 1;
        for (const auto& a : g.axes_) g.n_x_ *= a.size();

        const std::size_t dim = box.size();
        g.x_points_.resize(static_cast<Eigen::Index>(g.n_x_), static_cast<Eigen::Index>(dim - 1));
        for (std::size_t ix = 0; ix < g.n_x_; ++ix) {
            const auto sub = g.x_subindices(ix);
            for (std::size_t k = 0; k < sub.size(); ++k) {
                g.x_points_(static_cast<Eigen::Index>(ix), static_cast<Eigen::Index>(k)) = g.axes_[k][sub[k]];
            }
        }
        g.unit_points_.resize(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(dim));
        for (std::size_t ix = 0; ix < g.n_x_; ++ix) {
            for (std::size_t is = 0; is < g.n_s(); ++is) {
                const auto row = static_cast<Eigen::Index>(g.flat(is, ix));
                g.unit_points_.row(row) = g.to_unit(g.point(is, ix)).transpose();
            }
        }
        return g;
    }

    std::size_t n_s() const noexcept { return s_values_.size(); }
    std::size_t n_x() const noexcept { return n_x_; }
    std::size_t size() const noexcept { return n_s() * n_x_; }
    /// Number of x dimensions (d).
    std::size_t x_dims() const noexcept { return axes_.size(); }
    std::size_t dims() const noexcept { return axes_.size() + 1; }

    const std::vector<double>& s_values() const noexcept { return s_values_; }
    double s_value(std::size_t is) const { return s_values_[is]; }
    const std::vector<std::vector<double>>& x_axes() const noexcept { return axes_; }
    const std::vector<Interval>& box() const noexcept { return box_; }
    const std::vector<std::size_t>& resolution() const noexcept { return resolution_; }

    std::size_t flat(std::size_t is, std::size_t ix) const noexcept { return ix * n_s() + is; }
    std::size_t flat(GridIndex g) const noexcept { return flat(g.s, g.x); }
    GridIndex unflat(std::size_t f) const noexcept { return {f % n_s(), f / n_s()}; }

    /// Per-dimension indices of an x-index (first dimension slowest).
    std::vector<std::size_t> x_subindices(std::size_t ix) const {
        std::vector<std::size_t> sub(axes_.size());
        for (std::size_t k = axes_.size(); k-- > 0;) {
            sub[k] = ix % axes_[k].size();
            ix /= axes_[k].size();
        }
        return sub;
    }

    Point x_point(std::size_t ix) const { return x_points_.row(static_cast<Eigen::Index>(ix)).transpose(); }

    /// Full coordinate (s, x_1, ..., x_d) in the original box.
    Point point(std::size_t is, std::size_t ix) const {
        Point p(static_cast<Eigen::Index>(dims()));
        p(0) = s_values_[is];
        p.tail(static_cast<Eigen::Index>(x_dims())) = x_points_.row(static_cast<Eigen::Index>(ix)).transpose();
        return p;
    }

    /// Maps a box coordinate to [0, 1]^D. GP models operate in these coordinates.
    Point to_unit(const Point& p) const {
        Point u(p.size());
        for (Eigen::Index k = 0; k < p.size(); ++k) {
            const auto& iv = box_[static_cast<std::size_t>(k)];
            u(k) = (p(k) - iv.lo) / (iv.hi - iv.lo);
        }
        return u;
    }

    Point unit_point(std::size_t is, std::size_t ix) const {
        return unit_points_.row(static_cast<Eigen::Index>(flat(is, ix))).transpose();
    }

    /// All grid points in unit coordinates, one row per flat index.
    const Eigen::MatrixXd& unit_points() const noexcept { return unit_points_; }

private:
    static std::vector<double> linspace(double lo, double hi, std::size_t n) {
        std::vector<double> v(n);
        const double step = (hi - lo) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) v[i] = lo + step * static_cast<double>(i);
        v.front() = lo;
        v.back() = hi;
        return v;
    }

    std::vector<Interval> box_;
    std::vector<std::size_t> resolution_;
    std::vector<double> s_values_;
    std::vector<std::vector<double>> axes_;
    std::size_t n_x_ = 0;
    Eigen::MatrixXd x_points_;
    Eigen::MatrixXd unit_points_;
};

inline GridDomain build_grid(std::vector<Interval> box, std::vector<std::size_t> resolution) {
    return GridDomain::build(std::move(box), std::move(resolution));
}

}  // namespace safebo
