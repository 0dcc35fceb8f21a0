#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "safebo/benchmarks.hpp"
#include "safebo/confidence.hpp"
#include "safebo/errors.hpp"
#include "safebo/harness.hpp"

// Config file schema (one `key = value` per line, '#' starts a comment):
//
//   benchmark     clinical | synthetic2d | synthetic3d | pendulum
//   algorithm     case1 | case2 | case3 | msafeucb | safeopt_mc | predvar
//   rounds        positive integer
//   seeds         comma-separated integers, e.g. 0,1,2,3,4
//   grid          N or N,N[,N]  (points per dimension, s first)
//   growth_scale  c > 0
//   refined_acq   true | false
//   robust_elim   true | false
//   beta_f        <number> | theoretical <B> <R> <delta>
//   beta_g        same as beta_f
//   noiseless     true | false
//   record_timing true | false
//   threads       0 (one per seed) or a positive integer
//   out           output directory

namespace safebo {

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

inline double parse_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &used);
    } catch (const std::logic_error&) {
        throw ConfigError(key + ": not a number: '" + v + "'");
    }
    if (used != v.size()) throw ConfigError(key + ": not a number: '" + v + "'");
    return out;
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError(key + ": expected a nonnegative integer, got '" + v + "'");
    }
    try {
        return std::stoull(v);
    } catch (const std::out_of_range&) {
        throw ConfigError(key + ": integer out of range: '" + v + "'");
    }
}

template <class T>
std::vector<T> parse_uint_list(const std::string& key, const std::string& v) {
    std::vector<T> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(static_cast<T>(parse_uint(key, trim(item))));
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
}

}  // namespace detail

inline BetaSchedule parse_beta(const std::string& key, const std::string& v) {
    std::istringstream in(v);
    std::string head;
    in >> head;
    if (head == "theoretical") {
        TheoreticalBeta b;
        if (!(in >> b.rkhs_bound >> b.noise_bound >> b.delta)) {
            throw ConfigError(key + ": expected 'theoretical <B> <R> <delta>'");
        }
        std::string rest;
        if (in >> rest) throw ConfigError(key + ": trailing text '" + rest + "'");
        validate(BetaSchedule{b});
        return b;
    }
    const double value = detail::parse_double(key, detail::trim(v));
    if (!(value > 0.0)) throw ConfigError(key + ": beta must be positive");
    return ConstantBeta{value};
}

inline std::vector<std::size_t> parse_grid(const std::string& v) {
    auto g = detail::parse_uint_list<std::size_t>("grid", v);
    for (auto n : g) {
        if (n < 2) throw ConfigError("grid: every dimension needs at least 2 points");
    }
    return g;
}

/// Applies one key/value pair. Unknown keys are rejected.
inline void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    using namespace detail;
    if (key == "benchmark") {
        auto b = parse_benchmark(value);
        if (!b) throw ConfigError("unknown benchmark '" + value + "'");
        cfg.benchmark = *b;
    } else if (key == "algorithm" || key == "algo") {
        auto a = parse_algorithm(value);
        if (!a) throw ConfigError("unknown algorithm '" + value + "'");
        cfg.algorithm = *a;
    } else if (key == "rounds") {
        cfg.rounds = parse_uint(key, value);
    } else if (key == "seeds") {
        cfg.seeds = parse_uint_list<std::uint64_t>(key, value);
    } else if (key == "grid") {
        cfg.grid = parse_grid(value);
    } else if (key == "growth_scale" || key == "c") {
        cfg.growth_scale = parse_double(key, value);
    } else if (key == "refined_acq") {
        cfg.refined_acq = parse_bool(key, value);
    } else if (key == "robust_elim") {
        cfg.robust_elim = parse_bool(key, value);
    } else if (key == "beta_f") {
        cfg.beta_f = parse_beta(key, value);
    } else if (key == "beta_g") {
        cfg.beta_g = parse_beta(key, value);
    } else if (key == "noiseless") {
        cfg.noiseless = parse_bool(key, value);
    } else if (key == "record_timing") {
        cfg.record_timing = parse_bool(key, value);
    } else if (key == "threads") {
        cfg.threads = parse_uint(key, value);
    } else if (key == "out") {
        if (value.empty()) throw ConfigError("out: empty path");
        cfg.out = value;
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

inline ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>",
                                     ExperimentConfig cfg = {}) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = detail::trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = detail::trim(std::string_view(body).substr(0, eq));
        const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
        try {
            apply_setting(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in, path.string(), std::move(base));
}

}  // namespace safebo
