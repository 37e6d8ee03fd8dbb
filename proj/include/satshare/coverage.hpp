#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "satshare/analytic.hpp"
#include "satshare/config.hpp"
#include "satshare/laplace.hpp"
#include "satshare/quadrature.hpp"
#include "satshare/report.hpp"

namespace satshare {

// Interference/noise terms entering an NTN user's SINR tail probability.
// Exposed so tests can zero individual contributions independently of the
// densities a full scenario would imply.
struct NtnCoverageTerms {
    double sat_interferer_density = 0.0; // co-band satellites, 1/m^2
    double bs_interferer_density = 0.0;  // co-channel BSs, 1/m^2; 0 disables the term
    double bs_exclusion_radius = 0.0;    // m
    double noise = 0.0;                  // W
};

// P(SINR >= theta) for a ground user served by its nearest visible satellite
// through the main lobe, averaged over the conditional serving-distance law.
inline double ntn_user_coverage(const ScenarioConfig& cfg, double theta,
                                const NtnCoverageTerms& terms,
                                const QuadratureSettings& qs = {}) {
    if (!(theta > 0.0)) throw std::invalid_argument("ntn_user_coverage: theta must be > 0");
    const auto& g = cfg.geometry;
    const auto& ntn = cfg.ntn;
    if (!(cfg.densities.sat_density > 0.0))
        throw std::domain_error("ntn_user_coverage: no satellites deployed");

    const int m = ntn.nakagami_m;
    const double md = static_cast<double>(m);
    const double desired = ntn.tx_power * ntn.main_lobe_gain * ntn.ref_path_loss;
    const std::size_t n = static_cast<std::size_t>(m);

    auto integrand = [&](double r) -> double {
        const double s = md * theta * std::pow(r, ntn.path_loss_exp) / desired;
        std::vector<double> gd(n, 0.0);
        if (terms.sat_interferer_density > 0.0) {
            auto gn = ntn_interference_exponent(s, terms.sat_interferer_density, r, g,
                                                ntn, m - 1, qs);
            for (std::size_t j = 0; j < n; ++j) gd[j] += gn[j];
        }
        if (terms.bs_interferer_density > 0.0) {
            auto gt = tn_interference_exponent(s, terms.bs_interferer_density,
                                               terms.bs_exclusion_radius, cfg.tn, m - 1, qs);
            for (std::size_t j = 0; j < n; ++j) gd[j] += gt[j];
        }
        gd[0] -= s * terms.noise;
        if (n > 1) gd[1] -= terms.noise;

        std::vector<double> ld(n);
        exp_derivatives_from_exponent(gd, ld);

        // sum_k (s^k/k!) (-1)^k L^(k)(s)
        double sum = ld[0];
        double s_pow_over_fact = 1.0;
        double sign = 1.0;
        for (std::size_t k = 1; k < n; ++k) {
            s_pow_over_fact *= s / static_cast<double>(k);
            sign = -sign;
            sum += s_pow_over_fact * sign * ld[k];
        }
        return sum * sat_distance_pdf(g, cfg.densities.sat_density, r);
    };

    const double value =
        integrate_finite(integrand, g.min_sat_distance(), g.max_sat_distance(), qs).value;
    return std::clamp(value, 0.0, 1.0);
}

struct TnCoverageTerms {
    double sat_interferer_density = 0.0; // shared-band satellites, 1/m^2
    double bs_interferer_density = 0.0;  // co-channel BSs beyond the serving distance
    double noise = 0.0;                  // W
};

// P(SINR >= theta) for a ground user served by its nearest BS (Rayleigh
// desired channel, so the Nakagami sum collapses to its first term).
inline double tn_user_coverage(const ScenarioConfig& cfg, double theta,
                               const TnCoverageTerms& terms,
                               const QuadratureSettings& qs = {}) {
    if (!(theta > 0.0)) throw std::invalid_argument("tn_user_coverage: theta must be > 0");
    if (!(cfg.densities.bs_density > 0.0))
        throw std::domain_error("tn_user_coverage: no base stations deployed");
    const auto& tn = cfg.tn;
    const double desired = tn.tx_power * tn.antenna_gain * tn.ref_path_loss;
    const double r_min = cfg.geometry.min_sat_distance();

    auto integrand = [&](double l) -> double {
        const double pdf = bs_distance_pdf(cfg.densities.bs_density, l);
        if (pdf == 0.0) return 0.0;
        const double s = theta * std::pow(l, tn.path_loss_exp) / desired;
        double expo = -s * terms.noise;
        if (terms.sat_interferer_density > 0.0)
            expo += ntn_interference_exponent(s, terms.sat_interferer_density, r_min,
                                              cfg.geometry, cfg.ntn, 0, qs)[0];
        if (terms.bs_interferer_density > 0.0)
            expo += tn_interference_exponent(s, terms.bs_interferer_density, l, tn, 0, qs)[0];
        return std::exp(expo) * pdf;
    };

    const double value = integrate_semi_infinite(integrand, 0.0, qs).value;
    return std::clamp(value, 0.0, 1.0);
}

// The three user classes of the sharing policy.

inline double coverage_ntn_shared(const ScenarioConfig& cfg, double theta,
                                  const QuadratureSettings& qs = {}) {
    const auto d = class_densities(cfg);
    NtnCoverageTerms t;
    t.sat_interferer_density = d.shared_sat;
    t.bs_interferer_density = d.co_channel_bs;
    t.bs_exclusion_radius = cfg.spectrum.protection_radius;
    t.noise = shared_band_noise(cfg);
    return ntn_user_coverage(cfg, theta, t, qs);
}

inline double coverage_ntn_reserved(const ScenarioConfig& cfg, double theta,
                                    const QuadratureSettings& qs = {}) {
    const auto d = class_densities(cfg);
    NtnCoverageTerms t;
    t.sat_interferer_density = d.reserved_sat;
    t.noise = reserved_band_noise(cfg);
    return ntn_user_coverage(cfg, theta, t, qs);
}

inline double coverage_tn(const ScenarioConfig& cfg, double theta,
                          const QuadratureSettings& qs = {}) {
    const auto d = class_densities(cfg);
    TnCoverageTerms t;
    t.sat_interferer_density = d.shared_sat;
    t.bs_interferer_density = d.co_channel_bs;
    t.noise = shared_band_noise(cfg);
    return tn_user_coverage(cfg, theta, t, qs);
}

inline double analytic_coverage(const ScenarioConfig& cfg, UserClass uc, double theta,
                                const QuadratureSettings& qs = {}) {
    switch (uc) {
    case UserClass::NtnShared: return coverage_ntn_shared(cfg, theta, qs);
    case UserClass::NtnReserved: return coverage_ntn_reserved(cfg, theta, qs);
    case UserClass::Tn: return coverage_tn(cfg, theta, qs);
    }
    throw std::logic_error("analytic_coverage: bad class");
}

inline CoverageCurve analytic_coverage_curve(const ScenarioConfig& cfg, UserClass uc,
                                             std::span<const double> thresholds,
                                             const QuadratureSettings& qs = {}) {
    CoverageCurve curve;
    curve.user_class = uc;
    curve.source = EngineKind::Analytic;
    curve.points.reserve(thresholds.size());
    for (double th : thresholds)
        curve.points.push_back({th, analytic_coverage(cfg, uc, th, qs), 0.0});
    return curve;
}

} // namespace satshare
