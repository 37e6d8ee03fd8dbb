// Minimal library walkthrough: evaluate the default scenario both ways.

#include <iostream>

#include "satshare/adr.hpp"
#include "satshare/config_io.hpp"
#include "satshare/coverage.hpp"
#include "satshare/simulator.hpp"

int main() {
    using namespace satshare;

    const ScenarioConfig cfg = default_scenario();
    const double theta = db_to_ratio(0.0); // 0 dB

    std::cout << "coverage at 0 dB (analytic vs 20k-trial simulation)\n";
    SimOptions sim{20000, default_seed, 0};
    const double thresholds[] = {theta};
    for (UserClass uc : {UserClass::NtnShared, UserClass::NtnReserved, UserClass::Tn}) {
        const double a = analytic_coverage(cfg, uc, theta);
        const auto s = estimate_coverage_curve(cfg, uc, thresholds, sim);
        std::cout << "  " << to_string(uc) << ": " << a << " vs "
                  << s.points[0].probability << " (+-" << s.points[0].half_width << ")\n";
    }

    const AdrReport r = ws_adr(cfg);
    std::cout << "analytic WS-ADR at (rp=" << cfg.spectrum.protection_radius / 1e3
              << " km, omega=" << cfg.spectrum.shared_fraction << "): " << r.ws_adr
              << " bit/s/m^2\n";
    return 0;
}
