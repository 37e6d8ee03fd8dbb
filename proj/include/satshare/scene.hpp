#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include "satshare/analytic.hpp"
#include "satshare/config.hpp"
#include "satshare/rng.hpp"

namespace satshare {

struct SatelliteNode {
    double cos_polar = 1.0; // cosine of the polar angle from the user's zenith
    double azimuth = 0.0;
    double distance = 0.0;
    double fading = 1.0; // channel power gain
    bool co_channel = true;
    bool shared_active = false;
};

struct BsNode {
    double x = 0.0, y = 0.0; // plane coordinates, user at origin
    double distance = 0.0;
    double fading = 1.0;
    bool co_channel = true;
};

// One sampled network realization around the typical user at the origin.
struct Scene {
    std::vector<SatelliteNode> satellites;
    std::vector<BsNode> base_stations;
    std::uint64_t rng_seed = 0;

    void clear() {
        satellites.clear();
        base_stations.clear();
    }
};

// Homogeneous Poisson field on the spherical cap visible from the user.
// Count ~ Poisson(density * cap area); positions uniform on the cap, so the
// polar cosine is uniform on [Re/Rs, 1].
inline void sample_satellites(const GeometryParams& g, double density, Xoshiro256pp& rng,
                              std::vector<SatelliteNode>& out) {
    out.clear();
    if (density <= 0.0) return;
    const double rs = g.shell_radius();
    const double re = g.earth_radius;
    const long n = rng.poisson(density * g.visible_cap_area());
    out.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        SatelliteNode sat;
        sat.cos_polar = rng.uniform(re / rs, 1.0);
        sat.azimuth = rng.uniform(0.0, 2.0 * pi);
        sat.distance = std::sqrt(rs * rs + re * re - 2.0 * rs * re * sat.cos_polar);
        out.push_back(sat);
    }
}

// Homogeneous Poisson field on a square of the given half-width around the
// user's ground position.
inline void sample_base_stations(double density, double half_width, Xoshiro256pp& rng,
                                 std::vector<BsNode>& out) {
    out.clear();
    if (density <= 0.0) return;
    const double side = 2.0 * half_width;
    const long n = rng.poisson(density * side * side);
    out.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        BsNode bs;
        bs.x = rng.uniform(-half_width, half_width);
        bs.y = rng.uniform(-half_width, half_width);
        bs.distance = std::hypot(bs.x, bs.y);
        out.push_back(bs);
    }
}

struct SceneOptions {
    bool with_base_stations = true;
    // Drop BSs inside this radius; sampling a PPP restricted to the disc
    // complement equals conditioning on an empty protection zone.
    double bs_exclusion_radius = 0.0;
};

// Samples a full realization and draws all marks and fading in one fixed
// order so a given rng state always produces the same scene.
inline void assemble_scene(const ScenarioConfig& cfg, Xoshiro256pp& rng,
                           const SceneOptions& opts, Scene& scene) {
    scene.clear();
    sample_satellites(cfg.geometry, cfg.densities.sat_density, rng, scene.satellites);
    const double p_co = 1.0 / static_cast<double>(cfg.densities.reuse_factor);
    const double p_shared =
        void_probability(cfg.densities.bs_density, cfg.spectrum.protection_radius);
    for (auto& sat : scene.satellites) {
        sat.fading = rng.gamma_unit_mean(cfg.ntn.nakagami_m) * cfg.ntn.nakagami_omega;
        sat.co_channel = rng.uniform01() < p_co;
        sat.shared_active = rng.uniform01() < p_shared;
    }
    if (opts.with_base_stations) {
        sample_base_stations(cfg.densities.bs_density, cfg.sim_region_half_width, rng,
                             scene.base_stations);
        if (opts.bs_exclusion_radius > 0.0) {
            std::erase_if(scene.base_stations, [&](const BsNode& b) {
                return b.distance <= opts.bs_exclusion_radius;
            });
        }
        for (auto& bs : scene.base_stations) {
            bs.fading = rng.exponential();
            bs.co_channel = rng.uniform01() < p_co;
        }
    }
}

enum class NtnUserBand { Shared, Reserved };

// Shared band iff every BS is strictly farther than the protection radius.
inline NtnUserBand classify_typical_ntn_user(const Scene& scene, double rp) {
    for (const auto& bs : scene.base_stations)
        if (bs.distance <= rp) return NtnUserBand::Reserved;
    return NtnUserBand::Shared;
}

namespace detail {

inline const SatelliteNode* nearest_satellite(const Scene& scene) {
    const SatelliteNode* best = nullptr;
    for (const auto& s : scene.satellites)
        if (!best || s.distance < best->distance) best = &s;
    return best;
}

inline const BsNode* nearest_bs(const Scene& scene) {
    const BsNode* best = nullptr;
    for (const auto& b : scene.base_stations)
        if (!best || b.distance < best->distance) best = &b;
    return best;
}

} // namespace detail

// SINR of the typical shared-band NTN user: nearest satellite through the
// main lobe against shared-active co-channel satellites, co-channel BSs and
// noise. Empty-sky scenes yield nullopt (trial discarded by the estimator).
inline std::optional<double> sinr_shared(const Scene& scene, const ScenarioConfig& cfg) {
    const SatelliteNode* serving = detail::nearest_satellite(scene);
    if (!serving) return std::nullopt;
    const auto& ntn = cfg.ntn;
    const double desired = ntn.tx_power * ntn.main_lobe_gain * ntn.ref_path_loss *
                           std::pow(serving->distance, -ntn.path_loss_exp) * serving->fading;
    double interference = 0.0;
    const double sat_coeff = ntn.tx_power * ntn.side_lobe_gain * ntn.ref_path_loss;
    for (const auto& s : scene.satellites) {
        if (&s == serving || !s.co_channel || !s.shared_active) continue;
        interference += sat_coeff * std::pow(s.distance, -ntn.path_loss_exp) * s.fading;
    }
    const double bs_coeff = cfg.tn.tx_power * cfg.tn.antenna_gain * cfg.tn.ref_path_loss;
    for (const auto& b : scene.base_stations) {
        if (!b.co_channel) continue;
        interference += bs_coeff * std::pow(b.distance, -cfg.tn.path_loss_exp) * b.fading;
    }
    const double denom = interference + shared_band_noise(cfg);
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return desired / denom;
}

// SINR of the typical reserved-band NTN user: only reserved-active co-channel
// satellites interfere.
inline std::optional<double> sinr_reserved(const Scene& scene, const ScenarioConfig& cfg) {
    const SatelliteNode* serving = detail::nearest_satellite(scene);
    if (!serving) return std::nullopt;
    const auto& ntn = cfg.ntn;
    const double desired = ntn.tx_power * ntn.main_lobe_gain * ntn.ref_path_loss *
                           std::pow(serving->distance, -ntn.path_loss_exp) * serving->fading;
    double interference = 0.0;
    const double sat_coeff = ntn.tx_power * ntn.side_lobe_gain * ntn.ref_path_loss;
    for (const auto& s : scene.satellites) {
        if (&s == serving || !s.co_channel || s.shared_active) continue;
        interference += sat_coeff * std::pow(s.distance, -ntn.path_loss_exp) * s.fading;
    }
    const double denom = interference + reserved_band_noise(cfg);
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return desired / denom;
}

// SINR of the typical TN user: nearest BS serves; shared-active co-channel
// satellites and the other co-channel BSs interfere on the shared band.
inline std::optional<double> sinr_tn(const Scene& scene, const ScenarioConfig& cfg) {
    const BsNode* serving = detail::nearest_bs(scene);
    if (!serving) return std::nullopt;
    const double bs_coeff = cfg.tn.tx_power * cfg.tn.antenna_gain * cfg.tn.ref_path_loss;
    const double desired =
        bs_coeff * std::pow(serving->distance, -cfg.tn.path_loss_exp) * serving->fading;
    double interference = 0.0;
    const double sat_coeff = cfg.ntn.tx_power * cfg.ntn.side_lobe_gain * cfg.ntn.ref_path_loss;
    for (const auto& s : scene.satellites) {
        if (!s.co_channel || !s.shared_active) continue;
        interference += sat_coeff * std::pow(s.distance, -cfg.ntn.path_loss_exp) * s.fading;
    }
    for (const auto& b : scene.base_stations) {
        if (&b == serving || !b.co_channel) continue;
        interference += bs_coeff * std::pow(b.distance, -cfg.tn.path_loss_exp) * b.fading;
    }
    const double denom = interference + shared_band_noise(cfg);
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return desired / denom;
}

// Debug dump: one tab-separated record per node.
inline void write_scene_tsv(std::ostream& os, const Scene& scene,
                            const ScenarioConfig& cfg) {
    os << "node\tx_m\ty_m\tz_m\tdistance_m\tfading\tco_channel\tshared_active\n";
    const double rs = cfg.geometry.shell_radius();
    for (const auto& s : scene.satellites) {
        const double sin_polar = std::sqrt(std::max(0.0, 1.0 - s.cos_polar * s.cos_polar));
        os << "satellite\t" << rs * sin_polar * std::cos(s.azimuth) << '\t'
           << rs * sin_polar * std::sin(s.azimuth) << '\t' << rs * s.cos_polar << '\t'
           << s.distance << '\t' << s.fading << '\t' << s.co_channel << '\t'
           << s.shared_active << '\n';
    }
    for (const auto& b : scene.base_stations) {
        os << "base_station\t" << b.x << '\t' << b.y << '\t' << cfg.geometry.earth_radius
           << '\t' << b.distance << '\t' << b.fading << '\t' << b.co_channel << "\t-\n";
    }
}

} // namespace satshare
