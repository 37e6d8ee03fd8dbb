#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "satshare/analytic.hpp"
#include "satshare/config.hpp"
#include "satshare/quadrature.hpp"

namespace satshare {

// Laplace exponents g(s) of the aggregate interference from a thinned point
// field, with analytic s-derivatives obtained by differentiating the PGFL
// integrand under the integral sign. The transform itself is exp(g(s)).
//
// Returned vector holds [g, g', ..., g^(order)].

// Satellite co-band interferers on the visible cap between r_near and Rmax.
// Nakagami-m interferer fading gives the (1 + q*s*v^-alpha/m)^-m kernel.
inline std::vector<double> ntn_interference_exponent(
    double s, double density, double r_near, const GeometryParams& g,
    const NtnChannelParams& ntn, int order, const QuadratureSettings& qs = {}) {
    if (order < 0) throw std::invalid_argument("ntn_interference_exponent: order >= 0");
    if (s < 0.0) throw std::invalid_argument("ntn_interference_exponent: s >= 0");
    const double rmax = g.max_sat_distance();
    if (r_near < 0.0 || r_near > rmax)
        throw std::invalid_argument("ntn_interference_exponent: bad lower limit");

    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    if (density <= 0.0) return out;

    const double coeff = 2.0 * detail::cap_intensity_coeff(g, density);
    const int m = ntn.nakagami_m;
    const double md = static_cast<double>(m);
    const double q = ntn.tx_power * ntn.side_lobe_gain * ntn.ref_path_loss;
    const double alpha = ntn.path_loss_exp;

    if (s > 0.0) {
        // 1-(1+z)^-m written cancellation-free; the plain form flushes to zero
        // for z below machine epsilon and silently truncates the far tail.
        auto kernel0 = [&](double v) {
            const double z = q * std::pow(v, -alpha) / md * s;
            if (m == 1) return v / (1.0 + 1.0 / z);
            return -std::expm1(-md * std::log1p(z)) * v;
        };
        out[0] = -coeff * integrate_finite(kernel0, r_near, rmax, qs).value;
    }

    // d^j/ds^j [1-(1+ws)^-m] = -(-1)^j m(m+1)...(m+j-1) w^j (1+ws)^-(m+j)
    double rising = 1.0;
    double sign = 1.0;
    for (int j = 1; j <= order; ++j) {
        rising *= md + static_cast<double>(j - 1);
        sign = -sign;
        auto kernel = [&](double v) {
            const double w = q * std::pow(v, -alpha) / md;
            return std::pow(w, j) * std::pow(1.0 + w * s, -(md + j)) * v;
        };
        out[static_cast<std::size_t>(j)] =
            coeff * sign * rising * integrate_finite(kernel, r_near, rmax, qs).value;
    }
    return out;
}

// Planar co-channel BS interferers beyond the exclusion radius, Rayleigh
// fading, so the kernel is the m=1 case. Requires path_loss_exp > 2.
inline std::vector<double> tn_interference_exponent(
    double s, double co_channel_density, double exclusion, const TnChannelParams& tn,
    int order, const QuadratureSettings& qs = {}) {
    if (order < 0) throw std::invalid_argument("tn_interference_exponent: order >= 0");
    if (s < 0.0) throw std::invalid_argument("tn_interference_exponent: s >= 0");
    if (exclusion < 0.0) throw std::invalid_argument("tn_interference_exponent: exclusion >= 0");
    if (tn.path_loss_exp <= 2.0)
        throw std::domain_error(
            "tn_interference_exponent: path_loss_exp <= 2 diverges on the plane");

    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    if (co_channel_density <= 0.0) return out;

    const double coeff = 2.0 * pi * co_channel_density;
    const double p = tn.tx_power * tn.antenna_gain * tn.ref_path_loss;
    const double alpha = tn.path_loss_exp;

    if (s > 0.0) {
        // z/(1+z) form of the Rayleigh kernel; see the satellite kernel above.
        auto kernel0 = [&](double x) {
            const double z = p * std::pow(x, -alpha) * s;
            return x / (1.0 + 1.0 / z);
        };
        out[0] = -coeff * integrate_semi_infinite(kernel0, exclusion, qs).value;
    }

    double factorial = 1.0;
    double sign = 1.0;
    for (int j = 1; j <= order; ++j) {
        factorial *= static_cast<double>(j);
        sign = -sign;
        auto kernel = [&](double x) {
            const double u = p * std::pow(x, -alpha);
            return std::pow(u, j) * std::pow(1.0 + u * s, -(1.0 + j)) * x;
        };
        out[static_cast<std::size_t>(j)] =
            coeff * sign * factorial * integrate_semi_infinite(kernel, exclusion, qs).value;
    }
    return out;
}

} // namespace satshare
