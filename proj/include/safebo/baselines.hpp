#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "safebo/confidence.hpp"
#include "safebo/grid.hpp"
#include "safebo/msafeopt.hpp"
#include "safebo/safe_set.hpp"

namespace safebo {

// Both baselines share the safe set and boundary definition of M-SafeOpt and use no
// growth-rate constants. Their per-x best guess (for R^X reporting) is the UCB^f
// maximizer below the boundary, i.e. SafeState::maximizer.

namespace detail {

inline double max_width(const ConfidenceField& f, const ConfidenceField& g, std::size_t is, std::size_t ix) {
    return std::max(f.width(is, ix), g.width(is, ix));
}

}  // namespace detail

/// SafeOpt-MC with monotone-boundary expanders.
///
/// G_t: boundary actions of every x whose boundary is below s = 1.
/// M_t: safe actions whose UCB^f reaches the best safe LCB^f.
/// Selects the widest band over G_t and M_t.
inline RoundDecision safeopt_mc_step(const GridDomain& grid, const ConfidenceField& f, const ConfidenceField& g,
                                     double h, std::size_t round = 1) {
    RoundDecision out;
    SafeState& st = out.state;
    st = compute_geometry(grid, f, g, h, std::nullopt);
    st.round = round;
    const std::size_t last = grid.n_s() - 1;

    std::optional<Selection> best;
    for (std::size_t ix = 0; ix < grid.n_x(); ++ix) {
        const std::size_t b = st.boundary[ix];
        for (std::size_t is = 0; is < grid.n_s(); ++is) {
            const bool expander = is == b && b != last;
            const bool maximizer = in_safe_set(g, h, is, ix) && f.ucb(is, ix) >= st.best_safe_lcb;
            if (expander) st.expanders.push_back({is, ix});
            if (maximizer) st.maximizers.push_back({is, ix});
            if (!expander && !maximizer) continue;
            const double a = detail::max_width(f, g, is, ix);
            if (!best || a > best->acq_value) {
                best = Selection{{is, ix}, expander ? Source::Expander : Source::Maximizer, a};
            }
        }
    }
    out.selection = best;
    if (!best) out.terminal_reason = "no expanders or maximizers left";
    return out;
}

/// PredVar: the widest band anywhere in S_t.
inline RoundDecision predvar_step(const GridDomain& grid, const ConfidenceField& f, const ConfidenceField& g,
                                  double h, std::size_t round = 1) {
    RoundDecision out;
    SafeState& st = out.state;
    st = compute_geometry(grid, f, g, h, std::nullopt);
    st.round = round;

    std::optional<Selection> best;
    for (std::size_t ix = 0; ix < grid.n_x(); ++ix) {
        for (std::size_t is = 0; is < grid.n_s(); ++is) {
            if (!in_safe_set(g, h, is, ix)) continue;
            const double a = detail::max_width(f, g, is, ix);
            if (!best || a > best->acq_value) {
                best = Selection{{is, ix}, Source::Maximizer, a};
            }
        }
    }
    out.selection = best;
    return out;
}

}  // namespace safebo
