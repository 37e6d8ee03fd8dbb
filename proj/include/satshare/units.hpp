#pragma once

#include <cmath>
#include <stdexcept>

namespace satshare {

inline constexpr double boltzmann_const = 1.380649e-23; // J/K
inline constexpr double pi = 3.14159265358979323846;

enum class DbKind { PowerDbm, GainDbi };

// dBm -> watts, dBi -> linear ratio.
inline double to_linear(double value_db, DbKind kind) {
    if (!std::isfinite(value_db))
        throw std::invalid_argument("to_linear: non-finite input");
    switch (kind) {
    case DbKind::PowerDbm: return std::pow(10.0, (value_db - 30.0) / 10.0);
    case DbKind::GainDbi:  return std::pow(10.0, value_db / 10.0);
    }
    throw std::logic_error("to_linear: bad kind");
}

inline double from_linear(double linear, DbKind kind) {
    if (!std::isfinite(linear) || linear <= 0.0)
        throw std::invalid_argument("from_linear: input must be finite and positive");
    switch (kind) {
    case DbKind::PowerDbm: return 10.0 * std::log10(linear) + 30.0;
    case DbKind::GainDbi:  return 10.0 * std::log10(linear);
    }
    throw std::logic_error("from_linear: bad kind");
}

inline double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }
inline double ratio_to_db(double ratio) { return 10.0 * std::log10(ratio); }

} // namespace satshare
