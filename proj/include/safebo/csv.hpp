#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "safebo/errors.hpp"
#include "safebo/harness.hpp"

namespace safebo {

/// I/O failure on a results file; the message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace detail

inline std::vector<std::string> csv_header(std::size_t x_dims) {
    std::vector<std::string> h{"t", "s"};
    if (x_dims == 1) {
        h.emplace_back("x");
    } else {
        for (std::size_t i = 1; i <= x_dims; ++i) h.push_back("x" + std::to_string(i));
    }
    for (const char* c : {"f_true", "g_true", "violation", "r", "r_prime", "r_X", "R", "R_prime", "R_X",
                          "n_surviving_x", "n_G", "n_M", "ms"}) {
        h.emplace_back(c);
    }
    return h;
}

inline void write_csv(std::ostream& out, const RegretLog& log) {
    const auto header = csv_header(log.x_dims);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    using detail::fmt_double;
    for (const RegretRow& r : log.rows) {
        out << r.t << ',' << fmt_double(r.s);
        for (double xi : r.x) out << ',' << fmt_double(xi);
        out << ',' << fmt_double(r.f_true) << ',' << fmt_double(r.g_true) << ',' << (r.violation ? "true" : "false")
            << ',' << fmt_double(r.r) << ',' << fmt_double(r.r_prime) << ',' << fmt_double(r.r_x) << ','
            << fmt_double(r.cum_r) << ',' << fmt_double(r.cum_r_prime) << ',' << fmt_double(r.cum_r_x) << ','
            << r.n_surviving << ',' << r.n_g << ',' << r.n_m << ',' << fmt_double(r.ms) << '\n';
    }
}

inline void write_csv(const std::filesystem::path& path, const RegretLog& log) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_csv(out, log);
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

/// Parses a file written by write_csv. Only used by tooling and tests.
inline RegretLog read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty file: " + path.string());
    const auto header = detail::split_csv_line(line);
    if (header.size() < 16) throw IoError("unexpected header in " + path.string());
    RegretLog log;
    log.x_dims = header.size() - 15;
    if (header != csv_header(log.x_dims)) throw IoError("unexpected header in " + path.string());

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto c = detail::split_csv_line(line);
        if (c.size() != header.size()) {
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                          std::to_string(header.size()) + " fields");
        }
        try {
            RegretRow r;
            std::size_t k = 0;
            r.t = std::stoul(c[k++]);
            r.s = std::stod(c[k++]);
            for (std::size_t i = 0; i < log.x_dims; ++i) r.x.push_back(std::stod(c[k++]));
            r.f_true = std::stod(c[k++]);
            r.g_true = std::stod(c[k++]);
            r.violation = c[k++] == "true";
            r.r = std::stod(c[k++]);
            r.r_prime = std::stod(c[k++]);
            r.r_x = std::stod(c[k++]);
            r.cum_r = std::stod(c[k++]);
            r.cum_r_prime = std::stod(c[k++]);
            r.cum_r_x = std::stod(c[k++]);
            r.n_surviving = std::stoul(c[k++]);
            r.n_g = std::stoul(c[k++]);
            r.n_m = std::stoul(c[k++]);
            r.ms = std::stod(c[k++]);
            log.rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
        }
    }
    return log;
}

/// results/<benchmark>/<algorithm>/seed_<n>.csv
inline std::filesystem::path log_path(const std::filesystem::path& out_dir, const std::string& benchmark,
                                      const std::string& algorithm, std::uint64_t seed) {
    return out_dir / benchmark / algorithm / ("seed_" + std::to_string(seed) + ".csv");
}

}  // namespace safebo
