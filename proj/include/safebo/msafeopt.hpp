#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "safebo/confidence.hpp"
#include "safebo/errors.hpp"
#include "safebo/grid.hpp"
#include "safebo/safe_set.hpp"

namespace safebo {

/// Which instantiation of the round procedure to run.
///
/// Case1: global safe optimum (elimination + optimistic expansion).
/// Case2: best safe s for every x (no elimination, per-x expansion test).
/// Case3: f and g both monotone in s (expanders only, elimination by the growth test).
/// MSafeUcb: Case 3 without elimination, g-uncertainty only, saturated boundaries skipped.
enum class Variant { Case1, Case2, Case3, MSafeUcb };

enum class Source { Expander, Maximizer };

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::Case1: return "case1";
        case Variant::Case2: return "case2";
        case Variant::Case3: return "case3";
        case Variant::MSafeUcb: return "msafeucb";
    }
    return "?";
}

struct AlgoConfig {
    Variant variant = Variant::Case1;
    double l_f = 0.0;        // max growth of f along s
    double l_g_prime = 1.0;  // min growth of g along s
    double growth_scale = 1.0;
    bool refined_acq = false;
    bool robust_elim = true;
    double h = 0.0;
    BetaSchedule beta_f = ConstantBeta{3.0};
    BetaSchedule beta_g = ConstantBeta{3.0};

    void validate() const {
        if (!(l_g_prime > 0.0) || !std::isfinite(l_g_prime)) {
            throw ConfigError("L_g' must be positive");
        }
        if (!(l_f >= 0.0) || !std::isfinite(l_f)) {
            throw ConfigError("L_f must be nonnegative");
        }
        if (!(growth_scale > 0.0) || !std::isfinite(growth_scale)) {
            throw ConfigError("growth scale c must be positive");
        }
        safebo::validate(beta_f);
        safebo::validate(beta_g);
    }

    /// Copy with L_f <- c L_f and L_g' <- L_g' / c applied, and c reset to 1.
    AlgoConfig scaled() const {
        validate();
        AlgoConfig out = *this;
        out.l_f = l_f * growth_scale;
        out.l_g_prime = l_g_prime / growth_scale;
        out.growth_scale = 1.0;
        return out;
    }
};

struct Selection {
    GridIndex point;
    Source source = Source::Expander;
    double acq_value = 0.0;
};

/// Outcome of one round. `selection` is empty when G_t and M_t are both empty.
struct RoundDecision {
    SafeState state;
    std::optional<Selection> selection;
    std::string terminal_reason;

    bool terminal() const noexcept { return !selection.has_value(); }
};

namespace detail {

inline double max_ucb_below(const ConfidenceField& f, std::size_t boundary, std::size_t ix) {
    double m = f.ucb(0, ix);
    for (std::size_t is = 1; is <= boundary; ++is) m = std::max(m, f.ucb(is, ix));
    return m;
}

inline double max_lcb_below(const ConfidenceField& f, std::size_t boundary, std::size_t ix) {
    double m = f.lcb(0, ix);
    for (std::size_t is = 1; is <= boundary; ++is) m = std::max(m, f.lcb(is, ix));
    return m;
}

/// UCB^f at the boundary plus the largest gain possible before g could cross h.
inline double optimistic_f(const GridDomain& grid, const ConfidenceField& f, const SafeState& st,
                           double l_f, std::size_t ix) {
    const std::size_t b = st.boundary[ix];
    return f.ucb(b, ix) + l_f * std::abs(st.optimistic[ix] - grid.s_value(b));
}

}  // namespace detail

/// Boundary, optimistic boundary and per-x best guess for every x, plus max safe LCB^f.
///
/// The best guess maximizes UCB^f below the boundary, except for MSafeUcb, which uses UCB^g.
inline SafeState compute_geometry(const GridDomain& grid, const ConfidenceField& f, const ConfidenceField& g,
                                  double h, std::optional<double> l_g_prime, bool guess_from_g = false) {
    SafeState st;
    const std::size_t n_x = grid.n_x();
    st.surviving.assign(n_x, true);
    st.boundary.resize(n_x);
    st.optimistic.resize(n_x);
    st.maximizer.resize(n_x);
    for (std::size_t ix = 0; ix < n_x; ++ix) {
        const std::size_t b = safe_boundary(g, h, ix);
        st.boundary[ix] = b;
        st.optimistic[ix] = l_g_prime ? optimistic_boundary(grid, g, b, *l_g_prime, h, ix) : grid.s_value(b);
        st.maximizer[ix] = ucb_maximizer(guess_from_g ? g : f, b, ix);
    }
    st.best_safe_lcb = best_safe_lcb(f, g, h);
    return st;
}

/// Case 1 elimination: both the within-safe-set test (strict) and the
/// optimistic-expansion test (non-strict) must hold.
inline bool elim_case1(const GridDomain& grid, const ConfidenceField& f, const SafeState& st, double l_f,
                       std::size_t ix) {
    const bool inside = detail::max_ucb_below(f, st.boundary[ix], ix) < st.best_safe_lcb;
    const bool beyond = detail::optimistic_f(grid, f, st, l_f, ix) <= st.best_safe_lcb;
    return inside && beyond;
}

/// Case 3 elimination: the optimistic-expansion test alone.
inline bool elim_case3(const GridDomain& grid, const ConfidenceField& f, const SafeState& st, double l_f,
                       std::size_t ix) {
    return detail::optimistic_f(grid, f, st, l_f, ix) <= st.best_safe_lcb;
}

/// Case 1 expansion: optimistic f beyond the boundary beats the best safe LCB^f anywhere.
inline bool expd_case1(const GridDomain& grid, const ConfidenceField& f, const SafeState& st, double l_f,
                       std::size_t ix) {
    return detail::optimistic_f(grid, f, st, l_f, ix) > st.best_safe_lcb;
}

/// Case 2 expansion: the comparison uses the same x on both sides.
inline bool expd_case2(const GridDomain& grid, const ConfidenceField& f, const SafeState& st, double l_f,
                       std::size_t ix) {
    return detail::optimistic_f(grid, f, st, l_f, ix) > detail::max_lcb_below(f, st.boundary[ix], ix);
}

/// Acquisition value of a point given its membership in G_t and M_t.
inline double acquisition_value(const ConfidenceField& f, const ConfidenceField& g, GridIndex p, bool in_g,
                                bool in_m, const AlgoConfig& cfg) {
    const double wf = f.width(p.s, p.x);
    const double wg = g.width(p.s, p.x);
    if (in_g) {
        switch (cfg.variant) {
            case Variant::MSafeUcb:
                return wg;
            default:
                return cfg.refined_acq ? std::max(wf, (cfg.l_f / cfg.l_g_prime) * wg) : std::max(wf, wg);
        }
    }
    if (in_m && (cfg.variant == Variant::Case1 || cfg.variant == Variant::Case2)) {
        return wf;
    }
    return 0.0;
}

/// Acquisition of an arbitrary point against the sets stored in `st`.
inline double acquisition(const ConfidenceField& f, const ConfidenceField& g, const SafeState& st, GridIndex p,
                          const AlgoConfig& cfg) {
    const bool in_g = std::find(st.expanders.begin(), st.expanders.end(), p) != st.expanders.end();
    const bool in_m = std::find(st.maximizers.begin(), st.maximizers.end(), p) != st.maximizers.end();
    return acquisition_value(f, g, p, in_g, in_m, cfg);
}

/// One round of the selection procedure on precomputed confidence fields.
///
/// `cfg` must already have the growth scale applied (see AlgoConfig::scaled).
/// `previous` is D_X^{t-1}; it is only consulted when robust_elim is false, and an
/// empty vector means the full D_X.
inline RoundDecision step(const GridDomain& grid, const ConfidenceField& f, const ConfidenceField& g,
                          const AlgoConfig& cfg, const std::vector<bool>& previous = {}, std::size_t round = 1) {
    if (f.n_s() != grid.n_s() || f.n_x() != grid.n_x() || g.n_s() != grid.n_s() || g.n_x() != grid.n_x()) {
        throw ContractViolation("step: confidence fields do not match the grid");
    }
    RoundDecision out;
    SafeState& st = out.state;
    st = compute_geometry(grid, f, g, cfg.h, cfg.l_g_prime, cfg.variant == Variant::MSafeUcb);
    st.round = round;

    const std::size_t n_x = grid.n_x();
    const std::size_t last = grid.n_s() - 1;
    for (std::size_t ix = 0; ix < n_x; ++ix) {
        const bool candidate = cfg.robust_elim || previous.empty() || previous[ix];
        bool eliminated = false;
        if (candidate) {
            switch (cfg.variant) {
                case Variant::Case1: eliminated = elim_case1(grid, f, st, cfg.l_f, ix); break;
                case Variant::Case3: eliminated = elim_case3(grid, f, st, cfg.l_f, ix); break;
                case Variant::Case2:
                case Variant::MSafeUcb: break;
            }
        }
        st.surviving[ix] = candidate && !eliminated;
    }

    std::vector<char> in_g(n_x, 0);
    for (std::size_t ix = 0; ix < n_x; ++ix) {
        if (!st.surviving[ix]) continue;
        bool expand = false;
        switch (cfg.variant) {
            case Variant::Case1: expand = expd_case1(grid, f, st, cfg.l_f, ix); break;
            case Variant::Case2: expand = expd_case2(grid, f, st, cfg.l_f, ix); break;
            case Variant::Case3: expand = true; break;
            case Variant::MSafeUcb: expand = st.boundary[ix] != last; break;
        }
        if (expand) {
            in_g[ix] = 1;
            st.expanders.push_back({st.boundary[ix], ix});
        }
        if (cfg.variant == Variant::Case1 || cfg.variant == Variant::Case2) {
            st.maximizers.push_back({st.maximizer[ix], ix});
        }
    }

    // Candidates visited in increasing flat order; strict '>' keeps the smallest index on ties.
    std::optional<Selection> best;
    auto consider = [&](GridIndex p, bool g_member, bool m_member) {
        const double a = acquisition_value(f, g, p, g_member, m_member, cfg);
        if (!best || a > best->acq_value) {
            best = Selection{p, g_member ? Source::Expander : Source::Maximizer, a};
        }
    };
    const bool has_m = cfg.variant == Variant::Case1 || cfg.variant == Variant::Case2;
    for (std::size_t ix = 0; ix < n_x; ++ix) {
        if (!st.surviving[ix]) continue;
        const GridIndex gp{st.boundary[ix], ix};
        const GridIndex mp{st.maximizer[ix], ix};
        const bool g_here = in_g[ix] != 0;
        if (has_m && mp.s < gp.s) consider(mp, false, true);
        if (g_here) consider(gp, true, has_m && mp == gp);
        if (has_m && (mp.s > gp.s || (mp == gp && !g_here))) consider(mp, false, true);
    }
    out.selection = best;
    if (!best) {
        out.terminal_reason = st.n_surviving() == 0 ? "every x was eliminated" : "no expanders or maximizers left";
    }
    return out;
}

/// Stateful driver carrying D_X^t across rounds.
class MSafeOpt {
public:
    explicit MSafeOpt(const AlgoConfig& cfg) : cfg_(cfg.scaled()) {}

    const AlgoConfig& config() const noexcept { return cfg_; }

    RoundDecision select(const GridDomain& grid, const ConfidenceField& f, const ConfidenceField& g) {
        ++round_;
        RoundDecision d = step(grid, f, g, cfg_, surviving_, round_);
        surviving_ = d.state.surviving;
        return d;
    }

private:
    AlgoConfig cfg_;
    std::vector<bool> surviving_;
    std::size_t round_ = 0;
};

}  // namespace safebo
