#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "satshare/units.hpp"

namespace satshare {

// All quantities are SI (m, Hz, W, K, linear gains). Conversions from
// km/MHz/dBm/dBi happen at config ingestion, never inside the engines.

struct GeometryParams {
    double earth_radius = 6371e3;  // m
    double sat_altitude = 500e3;   // m

    double shell_radius() const { return earth_radius + sat_altitude; }
    double min_sat_distance() const { return sat_altitude; }
    double max_sat_distance() const {
        const double rs = shell_radius();
        return std::sqrt(rs * rs - earth_radius * earth_radius);
    }
    // Spherical cap above the horizon of a surface user.
    double visible_cap_area() const {
        const double rs = shell_radius();
        return 2.0 * pi * rs * rs * (1.0 - earth_radius / rs);
    }
};

struct NtnChannelParams {
    double tx_power = 100.0;       // W
    double main_lobe_gain = 1000.0;
    double side_lobe_gain = 100.0;
    double ref_path_loss = 1.0;    // at 1 m
    double path_loss_exp = 2.0;
    int nakagami_m = 1;
    double nakagami_omega = 1.0;
};

struct TnChannelParams {
    double tx_power = 39.810717055349734; // W (46 dBm)
    double antenna_gain = 100.0;
    double ref_path_loss = 1.0;           // at 1 m
    double path_loss_exp = 3.5;
    double service_radius = 10e3;         // m; carried for completeness, unused by the metrics
};

struct DeploymentDensities {
    double sat_density = 1e-11;      // 1/m^2 on the orbital shell
    double bs_density = 0.318e-6;    // 1/m^2
    double ntn_user_density = 0.0;   // 1/m^2; carried, drives no metric
    double tn_user_density = 0.0;    // 1/m^2; carried, drives no metric
    int reuse_factor = 2;
};

struct SpectrumPolicy {
    double total_bandwidth = 300e6;      // Hz
    double shared_fraction = 2.0 / 3.0;  // omega_s in [0,1]
    double protection_radius = 12e3;     // m

    double shared_bandwidth() const { return shared_fraction * total_bandwidth; }
    // Defined as the remainder so the two bands always sum to the total exactly.
    double reserved_bandwidth() const { return total_bandwidth - shared_bandwidth(); }
};

enum class NoiseMode { Explicit, Thermal, InterferenceLimited };

struct NoiseModel {
    NoiseMode mode = NoiseMode::Thermal;
    double explicit_power = 0.0;          // W, Explicit mode
    double noise_figure_db = 7.0;         // Thermal mode
    double reference_temperature = 290.0; // K, Thermal mode
};

inline double noise_power(const NoiseModel& n, double bandwidth) {
    switch (n.mode) {
    case NoiseMode::Explicit:
        return n.explicit_power;
    case NoiseMode::Thermal:
        if (bandwidth <= 0.0)
            throw std::invalid_argument("noise_power: thermal mode needs bandwidth > 0");
        return boltzmann_const * n.reference_temperature * bandwidth *
               db_to_ratio(n.noise_figure_db);
    case NoiseMode::InterferenceLimited:
        return 0.0;
    }
    throw std::logic_error("noise_power: bad mode");
}

struct QosWeights {
    double ntn_shared = 27.0;
    double ntn_reserved = 29.0;
    double tn = 0.9;
    double adr_threshold_ntn_shared = 0.0;  // bit/s/m^2
    double adr_threshold_ntn_reserved = 0.0;
    double adr_threshold_tn = 0.0;
};

struct ScenarioConfig {
    GeometryParams geometry;
    NtnChannelParams ntn;
    TnChannelParams tn;
    DeploymentDensities densities;
    SpectrumPolicy spectrum;
    NoiseModel noise;
    QosWeights weights;
    double sim_region_half_width = 50e3; // m, BS sampling square
};

// Collects every violated invariant; an empty result means the config is usable.
inline std::vector<std::string> validate_scenario(const ScenarioConfig& c) {
    std::vector<std::string> v;
    auto bad = [&v](const std::string& msg) { v.push_back(msg); };

    if (!(c.geometry.earth_radius > 0.0)) bad("geometry.earth_radius must be > 0");
    if (!(c.geometry.sat_altitude > 0.0)) bad("geometry.sat_altitude must be > 0");

    if (!(c.ntn.tx_power > 0.0)) bad("ntn.tx_power must be > 0");
    if (!(c.ntn.side_lobe_gain > 0.0)) bad("ntn.side_lobe_gain must be > 0");
    if (c.ntn.main_lobe_gain < c.ntn.side_lobe_gain)
        bad("ntn.main_lobe_gain must be >= ntn.side_lobe_gain");
    if (!(c.ntn.ref_path_loss > 0.0)) bad("ntn.ref_path_loss must be > 0");
    if (!(c.ntn.path_loss_exp > 0.0)) bad("ntn.path_loss_exp must be > 0");
    if (c.ntn.nakagami_m < 1) bad("ntn.nakagami_m must be a positive integer");
    if (c.ntn.nakagami_omega != 1.0)
        bad("ntn.nakagami_omega must be 1 (unit-mean fading assumption)");

    if (!(c.tn.tx_power > 0.0)) bad("tn.tx_power must be > 0");
    if (!(c.tn.antenna_gain > 0.0)) bad("tn.antenna_gain must be > 0");
    if (!(c.tn.ref_path_loss > 0.0)) bad("tn.ref_path_loss must be > 0");
    if (!(c.tn.path_loss_exp > 2.0))
        bad("tn.path_loss_exp must exceed 2 (planar interference integral diverges otherwise)");
    if (c.tn.service_radius < 0.0) bad("tn.service_radius must be >= 0");

    if (c.densities.sat_density < 0.0) bad("densities.sat_density must be >= 0");
    if (c.densities.bs_density < 0.0) bad("densities.bs_density must be >= 0");
    if (c.densities.ntn_user_density < 0.0) bad("densities.ntn_user_density must be >= 0");
    if (c.densities.tn_user_density < 0.0) bad("densities.tn_user_density must be >= 0");
    if (c.densities.reuse_factor < 1) bad("densities.reuse_factor must be >= 1");

    if (!(c.spectrum.total_bandwidth > 0.0)) bad("spectrum.total_bandwidth must be > 0");
    if (c.spectrum.shared_fraction < 0.0 || c.spectrum.shared_fraction > 1.0)
        bad("spectrum.shared_fraction out of [0,1]");
    if (c.spectrum.protection_radius < 0.0) bad("spectrum.protection_radius must be >= 0");

    switch (c.noise.mode) {
    case NoiseMode::Explicit:
        if (c.noise.explicit_power < 0.0) bad("noise.explicit_power must be >= 0");
        break;
    case NoiseMode::Thermal:
        if (!(c.noise.reference_temperature > 0.0))
            bad("noise.reference_temperature must be > 0");
        break;
    case NoiseMode::InterferenceLimited:
        break;
    }

    if (c.weights.ntn_shared < 0.0) bad("weights.ntn_shared must be >= 0");
    if (c.weights.ntn_reserved < 0.0) bad("weights.ntn_reserved must be >= 0");
    if (c.weights.tn < 0.0) bad("weights.tn must be >= 0");
    if (c.weights.adr_threshold_ntn_shared < 0.0)
        bad("weights.adr_threshold_ntn_shared must be >= 0");
    if (c.weights.adr_threshold_ntn_reserved < 0.0)
        bad("weights.adr_threshold_ntn_reserved must be >= 0");
    if (c.weights.adr_threshold_tn < 0.0) bad("weights.adr_threshold_tn must be >= 0");

    if (!(c.sim_region_half_width > 0.0)) bad("sim_region_half_width must be > 0");

    return v;
}

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::ostringstream os;
        os << "invalid scenario configuration:";
        for (const auto& s : v) os << "\n  - " << s;
        return os.str();
    }
    std::vector<std::string> violations_;
};

inline const ScenarioConfig& require_valid(const ScenarioConfig& c) {
    auto v = validate_scenario(c);
    if (!v.empty()) throw ValidationError(std::move(v));
    return c;
}

// Per-class noise variances over the band each user class actually occupies.
inline double shared_band_noise(const ScenarioConfig& c) {
    return c.noise.mode == NoiseMode::Thermal && c.spectrum.shared_bandwidth() <= 0.0
               ? 0.0
               : noise_power(c.noise, c.spectrum.shared_bandwidth());
}
inline double reserved_band_noise(const ScenarioConfig& c) {
    return c.noise.mode == NoiseMode::Thermal && c.spectrum.reserved_bandwidth() <= 0.0
               ? 0.0
               : noise_power(c.noise, c.spectrum.reserved_bandwidth());
}

} // namespace satshare
