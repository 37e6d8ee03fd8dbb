#pragma once

#include <cmath>
#include <stdexcept>

#include "satshare/config.hpp"
#include "satshare/units.hpp"

namespace satshare {

// Probability that no BS falls inside the protection disc of radius rp.
inline double void_probability(double bs_density, double rp) {
    if (rp < 0.0) throw std::invalid_argument("void_probability: rp must be >= 0");
    return std::exp(-pi * bs_density * rp * rp);
}

// Thinned density of satellites serving shared-band users.
inline double shared_sat_density(const DeploymentDensities& d, double rp) {
    return void_probability(d.bs_density, rp) * d.sat_density /
           static_cast<double>(d.reuse_factor);
}

// Complement of shared_sat_density; the two always sum to sat_density/reuse exactly.
inline double reserved_sat_density(const DeploymentDensities& d, double rp) {
    return d.sat_density / static_cast<double>(d.reuse_factor) -
           shared_sat_density(d, rp);
}

struct SpectrumClassDensities {
    double shared_sat = 0.0;    // 1/m^2
    double reserved_sat = 0.0;  // 1/m^2
    double co_channel_bs = 0.0; // 1/m^2
    double void_prob = 1.0;
};

inline SpectrumClassDensities class_densities(const ScenarioConfig& c) {
    SpectrumClassDensities out;
    out.void_prob = void_probability(c.densities.bs_density, c.spectrum.protection_radius);
    out.shared_sat = shared_sat_density(c.densities, c.spectrum.protection_radius);
    out.reserved_sat = reserved_sat_density(c.densities, c.spectrum.protection_radius);
    out.co_channel_bs = c.densities.bs_density / static_cast<double>(c.densities.reuse_factor);
    return out;
}

// CCDF of a unit-mean Gamma(m, 1/m) channel power gain, integer m.
inline double nakagami_ccdf(int m, double x) {
    if (m < 1) throw std::invalid_argument("nakagami_ccdf: m must be >= 1");
    if (x < 0.0) throw std::invalid_argument("nakagami_ccdf: x must be >= 0");
    const double mx = static_cast<double>(m) * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < m; ++k) {
        term *= mx / static_cast<double>(k);
        sum += term;
    }
    return std::exp(-mx) * sum;
}

namespace detail {

// Shared geometry factor: the cap area within distance r of a surface user
// grows as pi*(Rs/Re)*(r^2 - Rmin^2), so the radial intensity is
// 2*pi*lambda*(Rs/Re)*r.
inline double cap_intensity_coeff(const GeometryParams& g, double density) {
    return pi * density * g.shell_radius() / g.earth_radius;
}

} // namespace detail

// PDF of the nearest visible satellite distance, conditioned on at least one
// satellite above the horizon. Zero outside [Rmin, Rmax] by definition.
inline double sat_distance_pdf(const GeometryParams& g, double sat_density, double r) {
    if (!(sat_density > 0.0))
        throw std::domain_error("sat_distance_pdf: satellite density must be > 0");
    const double rmin = g.min_sat_distance();
    const double rmax = g.max_sat_distance();
    if (r < rmin || r > rmax) return 0.0;
    const double a = detail::cap_intensity_coeff(g, sat_density);
    const double u = a * (r * r - rmin * rmin);
    const double norm = -std::expm1(-a * (rmax * rmax - rmin * rmin));
    if (u > 745.0) return 0.0; // exp underflow
    return 2.0 * a * r * std::exp(-u) / norm;
}

// CDF matching sat_distance_pdf; used by distribution tests.
inline double sat_distance_cdf(const GeometryParams& g, double sat_density, double r) {
    if (!(sat_density > 0.0))
        throw std::domain_error("sat_distance_cdf: satellite density must be > 0");
    const double rmin = g.min_sat_distance();
    const double rmax = g.max_sat_distance();
    if (r <= rmin) return 0.0;
    if (r >= rmax) return 1.0;
    const double a = detail::cap_intensity_coeff(g, sat_density);
    return std::expm1(-a * (r * r - rmin * rmin)) /
           std::expm1(-a * (rmax * rmax - rmin * rmin));
}

// Rayleigh nearest-neighbour distance of a planar PPP.
inline double bs_distance_pdf(double bs_density, double l) {
    if (l < 0.0) return 0.0;
    const double u = pi * bs_density * l * l;
    if (u > 745.0) return 0.0;
    return 2.0 * pi * bs_density * l * std::exp(-u);
}

inline double bs_distance_cdf(double bs_density, double l) {
    if (l <= 0.0) return 0.0;
    return -std::expm1(-pi * bs_density * l * l);
}

} // namespace satshare
