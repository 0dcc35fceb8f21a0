#pragma once

#include <utility>
#include <vector>

#include "oracles.hpp"
#include "safebo/confidence.hpp"
#include "safebo/grid.hpp"
#include "safebo/msafeopt.hpp"

// Glue between the reference tables in oracles.hpp and the library types.

inline std::pair<safebo::ConfidenceField, safebo::ConfidenceField> to_fields(const oracle::Fields& F) {
    std::vector<double> mf, sf, mg, sg;
    for (std::size_t x = 0; x < F.nx; ++x) {
        for (std::size_t s = 0; s < F.ns; ++s) {
            mf.push_back(F.mu_f[x][s]);
            sf.push_back(F.sd_f[x][s]);
            mg.push_back(F.mu_g[x][s]);
            sg.push_back(F.sd_g[x][s]);
        }
    }
    return {safebo::ConfidenceField::from_arrays(F.ns, F.nx, mf, sf, F.beta_f),
            safebo::ConfidenceField::from_arrays(F.ns, F.nx, mg, sg, F.beta_g)};
}

inline safebo::Variant to_variant(oracle::Mode m) {
    switch (m) {
        case oracle::Mode::Case1: return safebo::Variant::Case1;
        case oracle::Mode::Case2: return safebo::Variant::Case2;
        case oracle::Mode::Case3: return safebo::Variant::Case3;
        case oracle::Mode::MSafeUcb: return safebo::Variant::MSafeUcb;
    }
    return safebo::Variant::Case1;
}

inline std::vector<std::pair<std::size_t, std::size_t>> as_pairs(const std::vector<safebo::GridIndex>& v) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& p : v) out.emplace_back(p.s, p.x);
    return out;
}

struct Mismatch {
    bool any = false;
    std::string what;
};

// Runs one library round on the oracle's table and reports the first disagreement.
inline Mismatch compare_round(oracle::Fields F, const oracle::Params& P) {
    const auto grid = safebo::build_grid({{0.0, 1.0}, {0.0, 1.0}}, {F.ns, F.nx});
    F.s_values = grid.s_values();
    const auto [f, g] = to_fields(F);
    safebo::AlgoConfig cfg;
    cfg.variant = to_variant(P.mode);
    cfg.h = P.h;
    cfg.l_f = P.l_f;
    cfg.l_g_prime = P.l_g;
    cfg.refined_acq = P.refined;
    const auto d = safebo::step(grid, f, g, cfg);
    const auto ref = oracle::round(F, P);

    Mismatch m;
    auto fail = [&](std::string w) {
        if (!m.any) m = {true, std::move(w)};
    };
    if (d.state.surviving != ref.surviving) fail("surviving");
    if (as_pairs(d.state.expanders) != ref.g_set) fail("expanders");
    if (as_pairs(d.state.maximizers) != ref.m_set) fail("maximizers");
    if (d.selection.has_value() != ref.pick.has_value()) {
        fail("selection presence");
    } else if (ref.pick && (d.selection->point.s != ref.pick->first || d.selection->point.x != ref.pick->second)) {
        fail("selection");
    }
    return m;
}
