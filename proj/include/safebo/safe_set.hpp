#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "safebo/confidence.hpp"
#include "safebo/errors.hpp"
#include "safebo/grid.hpp"

namespace safebo {

/// Membership in S_t: UCB^g <= h, or the always-safe s = 0 row.
inline bool in_safe_set(const ConfidenceField& g, double h, std::size_t is, std::size_t ix) {
    return is == 0 || g.ucb(is, ix) <= h;
}

/// Largest s-index with UCB^g <= h; 0 when none qualifies.
///
/// Failing indices below a qualifying one do not lower the result: monotonicity of g
/// already certifies everything underneath a certified point.
inline std::size_t safe_boundary(const ConfidenceField& g, double h, std::size_t ix) {
    for (std::size_t is = g.n_s(); is-- > 0;) {
        if (g.ucb(is, ix) <= h) {
            return is;
        }
    }
    return 0;
}

/// Closed-form solution of the optimistic boundary on the continuous s interval:
/// the largest s with LCB^g(s_b, x) + L_g' (s - s_b) <= h, clipped to [s_b, 1].
inline double optimistic_boundary(const GridDomain& grid, const ConfidenceField& g, std::size_t boundary,
                                  double l_g_prime, double h, std::size_t ix) {
    if (!(l_g_prime > 0.0)) {
        throw ConfigError("L_g' must be positive, got " + std::to_string(l_g_prime));
    }
    const double s_b = grid.s_value(boundary);
    const double slack = std::max(0.0, h - g.lcb(boundary, ix));
    return std::min(1.0, s_b + slack / l_g_prime);
}

/// argmax of UCB^f over s-indices [0, boundary]; ties go to the smallest index.
inline std::size_t ucb_maximizer(const ConfidenceField& f, std::size_t boundary, std::size_t ix) {
    std::size_t best = 0;
    double best_val = f.ucb(0, ix);
    for (std::size_t is = 1; is <= boundary; ++is) {
        if (f.ucb(is, ix) > best_val) {
            best_val = f.ucb(is, ix);
            best = is;
        }
    }
    return best;
}

/// max LCB^f over S_t, scanning every x (not only surviving ones).
inline double best_safe_lcb(const ConfidenceField& f, const ConfidenceField& g, double h) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t ix = 0; ix < f.n_x(); ++ix) {
        for (std::size_t is = 0; is < f.n_s(); ++is) {
            if (in_safe_set(g, h, is, ix)) {
                best = std::max(best, f.lcb(is, ix));
            }
        }
    }
    return best;
}

/// Round-t safe-set geometry.
///
/// `boundary`, `optimistic` and `maximizer` are filled for every x in D_X, including
/// eliminated ones, so that per-x best guesses stay available for reporting.
/// `surviving` marks D_X^t.
struct SafeState {
    std::size_t round = 0;
    std::vector<bool> surviving;
    std::vector<std::size_t> boundary;
    std::vector<double> optimistic;
    std::vector<std::size_t> maximizer;
    std::vector<GridIndex> expanders;   // G_t
    std::vector<GridIndex> maximizers;  // M_t
    double best_safe_lcb = -std::numeric_limits<double>::infinity();

    std::size_t n_surviving() const {
        return static_cast<std::size_t>(std::count(surviving.begin(), surviving.end(), true));
    }
};

}  // namespace safebo
