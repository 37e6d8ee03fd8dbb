#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "satshare/config.hpp"
#include "satshare/units.hpp"

namespace satshare {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using json = nlohmann::ordered_json;

inline const json& get_section(const json& root, const char* key) {
    auto it = root.find(key);
    if (it == root.end())
        throw ConfigError(std::string("config: missing section '") + key + "'");
    if (!it->is_object())
        throw ConfigError(std::string("config: section '") + key + "' must be an object");
    return *it;
}

inline double get_num(const json& obj, const std::string& section, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError("config: missing key '" + section + "." + key + "'");
    if (!it->is_number())
        throw ConfigError("config: key '" + section + "." + key + "' must be a number");
    return it->get<double>();
}

inline int get_int(const json& obj, const std::string& section, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError("config: missing key '" + section + "." + key + "'");
    if (!it->is_number_integer())
        throw ConfigError("config: key '" + section + "." + key + "' must be an integer");
    return it->get<int>();
}

inline std::string get_str(const json& obj, const std::string& section, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError("config: missing key '" + section + "." + key + "'");
    if (!it->is_string())
        throw ConfigError("config: key '" + section + "." + key + "' must be a string");
    return it->get<std::string>();
}

// Every key must be known; silent typos in parameter files are worse than errors.
inline void check_keys(const json& obj, const std::string& section,
                       std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError("config: unknown key '" + section + "." + item.key() + "'");
    }
}

} // namespace detail

// File keys accept the units the parameters are usually quoted in
// (km, MHz, dBm, dBi, 1/km^2); everything is converted to SI here and only here.
inline ScenarioConfig parse_scenario(const detail::json& root) {
    using namespace detail;
    constexpr double km = 1e3;
    constexpr double per_km2 = 1e-6;
    constexpr double mhz = 1e6;

    check_keys(root, "", {"geometry", "ntn", "tn", "densities", "spectrum", "noise",
                          "weights", "sim_region_half_width_km"});
    ScenarioConfig c;

    {
        const auto& g = get_section(root, "geometry");
        check_keys(g, "geometry", {"earth_radius_km", "altitude_km"});
        c.geometry.earth_radius = get_num(g, "geometry", "earth_radius_km") * km;
        c.geometry.sat_altitude = get_num(g, "geometry", "altitude_km") * km;
    }
    {
        const auto& n = get_section(root, "ntn");
        check_keys(n, "ntn",
                   {"tx_power_dbm", "main_lobe_gain_dbi", "side_lobe_gain_dbi",
                    "ref_path_loss", "path_loss_exp", "nakagami_m", "nakagami_omega"});
        c.ntn.tx_power = to_linear(get_num(n, "ntn", "tx_power_dbm"), DbKind::PowerDbm);
        c.ntn.main_lobe_gain =
            to_linear(get_num(n, "ntn", "main_lobe_gain_dbi"), DbKind::GainDbi);
        c.ntn.side_lobe_gain =
            to_linear(get_num(n, "ntn", "side_lobe_gain_dbi"), DbKind::GainDbi);
        c.ntn.ref_path_loss = get_num(n, "ntn", "ref_path_loss");
        c.ntn.path_loss_exp = get_num(n, "ntn", "path_loss_exp");
        c.ntn.nakagami_m = get_int(n, "ntn", "nakagami_m");
        c.ntn.nakagami_omega = get_num(n, "ntn", "nakagami_omega");
    }
    {
        const auto& t = get_section(root, "tn");
        check_keys(t, "tn", {"tx_power_dbm", "antenna_gain_dbi", "ref_path_loss",
                             "path_loss_exp", "service_radius_km"});
        c.tn.tx_power = to_linear(get_num(t, "tn", "tx_power_dbm"), DbKind::PowerDbm);
        c.tn.antenna_gain = to_linear(get_num(t, "tn", "antenna_gain_dbi"), DbKind::GainDbi);
        c.tn.ref_path_loss = get_num(t, "tn", "ref_path_loss");
        c.tn.path_loss_exp = get_num(t, "tn", "path_loss_exp");
        c.tn.service_radius = get_num(t, "tn", "service_radius_km") * km;
    }
    {
        const auto& d = get_section(root, "densities");
        check_keys(d, "densities", {"sat_per_km2", "bs_per_km2", "ntn_user_per_km2",
                                    "tn_user_per_km2", "reuse_factor"});
        c.densities.sat_density = get_num(d, "densities", "sat_per_km2") * per_km2;
        c.densities.bs_density = get_num(d, "densities", "bs_per_km2") * per_km2;
        c.densities.ntn_user_density = get_num(d, "densities", "ntn_user_per_km2") * per_km2;
        c.densities.tn_user_density = get_num(d, "densities", "tn_user_per_km2") * per_km2;
        c.densities.reuse_factor = get_int(d, "densities", "reuse_factor");
    }
    {
        const auto& s = get_section(root, "spectrum");
        check_keys(s, "spectrum",
                   {"total_bandwidth_mhz", "shared_fraction", "protection_radius_km"});
        c.spectrum.total_bandwidth = get_num(s, "spectrum", "total_bandwidth_mhz") * mhz;
        c.spectrum.shared_fraction = get_num(s, "spectrum", "shared_fraction");
        c.spectrum.protection_radius = get_num(s, "spectrum", "protection_radius_km") * km;
    }
    {
        const auto& n = get_section(root, "noise");
        const std::string mode = get_str(n, "noise", "mode");
        if (mode == "explicit") {
            check_keys(n, "noise", {"mode", "power_w"});
            c.noise.mode = NoiseMode::Explicit;
            c.noise.explicit_power = get_num(n, "noise", "power_w");
        } else if (mode == "thermal") {
            check_keys(n, "noise", {"mode", "noise_figure_db", "reference_temperature_k"});
            c.noise.mode = NoiseMode::Thermal;
            c.noise.noise_figure_db = get_num(n, "noise", "noise_figure_db");
            c.noise.reference_temperature = get_num(n, "noise", "reference_temperature_k");
        } else if (mode == "interference-limited") {
            check_keys(n, "noise", {"mode"});
            c.noise.mode = NoiseMode::InterferenceLimited;
        } else {
            throw ConfigError("config: noise.mode must be one of "
                              "explicit|thermal|interference-limited");
        }
    }
    {
        const auto& w = get_section(root, "weights");
        check_keys(w, "weights",
                   {"ntn_shared", "ntn_reserved", "tn", "adr_threshold_ntn_shared",
                    "adr_threshold_ntn_reserved", "adr_threshold_tn"});
        c.weights.ntn_shared = get_num(w, "weights", "ntn_shared");
        c.weights.ntn_reserved = get_num(w, "weights", "ntn_reserved");
        c.weights.tn = get_num(w, "weights", "tn");
        c.weights.adr_threshold_ntn_shared = get_num(w, "weights", "adr_threshold_ntn_shared");
        c.weights.adr_threshold_ntn_reserved =
            get_num(w, "weights", "adr_threshold_ntn_reserved");
        c.weights.adr_threshold_tn = get_num(w, "weights", "adr_threshold_tn");
    }
    c.sim_region_half_width = get_num(root, "", "sim_region_half_width_km") * km;

    require_valid(c);
    return c;
}

inline detail::json scenario_to_json(const ScenarioConfig& c) {
    using namespace detail;
    json root;
    root["geometry"] = {{"earth_radius_km", c.geometry.earth_radius / 1e3},
                        {"altitude_km", c.geometry.sat_altitude / 1e3}};
    root["ntn"] = {{"tx_power_dbm", from_linear(c.ntn.tx_power, DbKind::PowerDbm)},
                   {"main_lobe_gain_dbi", from_linear(c.ntn.main_lobe_gain, DbKind::GainDbi)},
                   {"side_lobe_gain_dbi", from_linear(c.ntn.side_lobe_gain, DbKind::GainDbi)},
                   {"ref_path_loss", c.ntn.ref_path_loss},
                   {"path_loss_exp", c.ntn.path_loss_exp},
                   {"nakagami_m", c.ntn.nakagami_m},
                   {"nakagami_omega", c.ntn.nakagami_omega}};
    root["tn"] = {{"tx_power_dbm", from_linear(c.tn.tx_power, DbKind::PowerDbm)},
                  {"antenna_gain_dbi", from_linear(c.tn.antenna_gain, DbKind::GainDbi)},
                  {"ref_path_loss", c.tn.ref_path_loss},
                  {"path_loss_exp", c.tn.path_loss_exp},
                  {"service_radius_km", c.tn.service_radius / 1e3}};
    root["densities"] = {{"sat_per_km2", c.densities.sat_density * 1e6},
                         {"bs_per_km2", c.densities.bs_density * 1e6},
                         {"ntn_user_per_km2", c.densities.ntn_user_density * 1e6},
                         {"tn_user_per_km2", c.densities.tn_user_density * 1e6},
                         {"reuse_factor", c.densities.reuse_factor}};
    root["spectrum"] = {{"total_bandwidth_mhz", c.spectrum.total_bandwidth / 1e6},
                        {"shared_fraction", c.spectrum.shared_fraction},
                        {"protection_radius_km", c.spectrum.protection_radius / 1e3}};
    switch (c.noise.mode) {
    case NoiseMode::Explicit:
        root["noise"] = {{"mode", "explicit"}, {"power_w", c.noise.explicit_power}};
        break;
    case NoiseMode::Thermal:
        root["noise"] = {{"mode", "thermal"},
                         {"noise_figure_db", c.noise.noise_figure_db},
                         {"reference_temperature_k", c.noise.reference_temperature}};
        break;
    case NoiseMode::InterferenceLimited:
        root["noise"] = {{"mode", "interference-limited"}};
        break;
    }
    root["weights"] = {{"ntn_shared", c.weights.ntn_shared},
                       {"ntn_reserved", c.weights.ntn_reserved},
                       {"tn", c.weights.tn},
                       {"adr_threshold_ntn_shared", c.weights.adr_threshold_ntn_shared},
                       {"adr_threshold_ntn_reserved", c.weights.adr_threshold_ntn_reserved},
                       {"adr_threshold_tn", c.weights.adr_threshold_tn}};
    root["sim_region_half_width_km"] = c.sim_region_half_width / 1e3;
    return root;
}

// Default parameter set, kept as the literal table so the emitted file shows
// the quoted values rather than derived SI numbers.
inline std::string default_scenario_text() {
    return R"({
  "geometry": {
    "earth_radius_km": 6371.0,
    "altitude_km": 500.0
  },
  "ntn": {
    "tx_power_dbm": 50.0,
    "main_lobe_gain_dbi": 30.0,
    "side_lobe_gain_dbi": 20.0,
    "ref_path_loss": 1.0,
    "path_loss_exp": 2.0,
    "nakagami_m": 1,
    "nakagami_omega": 1.0
  },
  "tn": {
    "tx_power_dbm": 46.0,
    "antenna_gain_dbi": 20.0,
    "ref_path_loss": 1.0,
    "path_loss_exp": 3.5,
    "service_radius_km": 10.0
  },
  "densities": {
    "sat_per_km2": 1e-05,
    "bs_per_km2": 0.318,
    "ntn_user_per_km2": 0.0,
    "tn_user_per_km2": 0.0,
    "reuse_factor": 2
  },
  "spectrum": {
    "total_bandwidth_mhz": 300.0,
    "shared_fraction": 0.6666666666666666,
    "protection_radius_km": 12.0
  },
  "noise": {
    "mode": "thermal",
    "noise_figure_db": 7.0,
    "reference_temperature_k": 290.0
  },
  "weights": {
    "ntn_shared": 27.0,
    "ntn_reserved": 29.0,
    "tn": 0.9,
    "adr_threshold_ntn_shared": 0.0,
    "adr_threshold_ntn_reserved": 0.0,
    "adr_threshold_tn": 0.0
  },
  "sim_region_half_width_km": 50.0
}
)";
}

inline ScenarioConfig default_scenario() {
    return parse_scenario(detail::json::parse(default_scenario_text()));
}

inline ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    detail::json root;
    try {
        root = detail::json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_scenario(root);
}

inline void save_scenario(const ScenarioConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("config: cannot write '" + path + "'");
    out << scenario_to_json(cfg).dump(2) << '\n';
}

} // namespace satshare
