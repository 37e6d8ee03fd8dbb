#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "satshare/coverage.hpp"
#include "satshare/report.hpp"

namespace satshare {

struct AdrSettings {
    QuadratureSettings quad;
    double panel_width = 2.0;    // bits of spectral efficiency per panel
    double tail_cutoff = 1e-6;   // coverage level treated as converged tail
    int tail_panels = 3;         // consecutive quiet panels before stopping
    int max_panels = 256;
};

// Area rate lambda*B*int_0^inf P(SINR >= 2^t - 1) dt, walked panel by panel
// until the (monotone) coverage integrand stays below the cutoff.
inline double area_data_rate(double node_density, double bandwidth,
                             const std::function<double(double)>& coverage,
                             const AdrSettings& as = {}) {
    if (node_density <= 0.0 || bandwidth <= 0.0) return 0.0;

    auto integrand = [&](double t) { return coverage(std::exp2(t) - 1.0); };

    double total = 0.0;
    int quiet = 0;
    for (int p = 0; p < as.max_panels; ++p) {
        const double t0 = p * as.panel_width;
        const double t1 = t0 + as.panel_width;
        total += integrate_finite(integrand, t0, t1, as.quad).value;
        quiet = integrand(t1) < as.tail_cutoff ? quiet + 1 : 0;
        if (quiet >= as.tail_panels) return node_density * bandwidth * total;
    }
    throw QuadratureError("area_data_rate: spectral-efficiency integral did not converge",
                          node_density * bandwidth * total, std::nan(""));
}

inline double adr_ntn_shared(const ScenarioConfig& cfg, const AdrSettings& as = {}) {
    const auto d = class_densities(cfg);
    return area_data_rate(
        d.shared_sat, cfg.spectrum.shared_bandwidth(),
        [&](double th) { return coverage_ntn_shared(cfg, th, as.quad); }, as);
}

inline double adr_ntn_reserved(const ScenarioConfig& cfg, const AdrSettings& as = {}) {
    const auto d = class_densities(cfg);
    return area_data_rate(
        d.reserved_sat, cfg.spectrum.reserved_bandwidth(),
        [&](double th) { return coverage_ntn_reserved(cfg, th, as.quad); }, as);
}

inline double adr_tn(const ScenarioConfig& cfg, const AdrSettings& as = {}) {
    const auto d = class_densities(cfg);
    return area_data_rate(
        d.co_channel_bs, cfg.spectrum.shared_bandwidth(),
        [&](double th) { return coverage_tn(cfg, th, as.quad); }, as);
}

inline AdrReport make_adr_report(const ScenarioConfig& cfg, double ns, double nr,
                                 double t) {
    AdrReport r;
    r.adr_ntn_shared = ns;
    r.adr_ntn_reserved = nr;
    r.adr_tn = t;
    r.ws_adr = cfg.weights.ntn_shared * ns + cfg.weights.ntn_reserved * nr +
               cfg.weights.tn * t;
    r.feasible_ntn_shared = ns >= cfg.weights.adr_threshold_ntn_shared;
    r.feasible_ntn_reserved = nr >= cfg.weights.adr_threshold_ntn_reserved;
    r.feasible_tn = t >= cfg.weights.adr_threshold_tn;
    r.operating_point = {cfg.spectrum.protection_radius, cfg.spectrum.shared_fraction};
    return r;
}

inline AdrReport ws_adr(const ScenarioConfig& cfg, const AdrSettings& as = {}) {
    return make_adr_report(cfg, adr_ntn_shared(cfg, as), adr_ntn_reserved(cfg, as),
                           adr_tn(cfg, as));
}

} // namespace satshare
