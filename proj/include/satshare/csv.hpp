#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "satshare/report.hpp"

namespace satshare {

// Shortest representation that parses back to the identical double, so every
// emitted CSV round-trips exactly.
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("csv: bad number '" + s + "'");
    return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

struct CoverageRow {
    double threshold_db = 0.0;
    std::string user_class;
    std::string engine;
    double probability = 0.0;
    double ci_halfwidth = 0.0;
};

inline constexpr const char* coverage_csv_header =
    "threshold_db,class,engine,probability,ci_halfwidth";

inline std::vector<CoverageRow> read_coverage_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != coverage_csv_header)
        throw std::runtime_error("csv: '" + path + "' has no coverage header");
    std::vector<CoverageRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 5) throw std::runtime_error("csv: malformed coverage row: " + line);
        rows.push_back({parse_double(f[0]), f[1], f[2], parse_double(f[3]), parse_double(f[4])});
    }
    return rows;
}

struct SweepRow {
    double rp_m = 0.0;
    double omega_s = 0.0;
    double adr_ns = 0.0;
    double adr_nr = 0.0;
    double adr_t = 0.0;
    double ws_adr = 0.0;
    bool feasible = false;
};

inline constexpr const char* sweep_csv_header =
    "rp_m,omega_s,adr_ns,adr_nr,adr_t,ws_adr,feasible";

// Loads a sweep table and re-derives the weighted sum as a consistency check.
inline std::vector<SweepRow> read_sweep_csv(const std::string& path, double w_ns,
                                            double w_nr, double w_t) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != sweep_csv_header)
        throw std::runtime_error("csv: '" + path + "' has no sweep header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 7) throw std::runtime_error("csv: malformed sweep row: " + line);
        SweepRow r{parse_double(f[0]), parse_double(f[1]), parse_double(f[2]),
                   parse_double(f[3]), parse_double(f[4]), parse_double(f[5]), f[6] == "1"};
        const double recomputed = w_ns * r.adr_ns + w_nr * r.adr_nr + w_t * r.adr_t;
        const double scale = std::max({std::fabs(r.ws_adr), std::fabs(recomputed), 1e-300});
        if (std::fabs(recomputed - r.ws_adr) > 1e-9 * scale)
            throw std::runtime_error("csv: ws_adr column inconsistent with weighted sum at rp=" +
                                     f[0] + ", omega=" + f[1]);
        rows.push_back(r);
    }
    return rows;
}

} // namespace satshare
