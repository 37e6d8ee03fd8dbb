#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracle_helpers.hpp"
#include "satshare/analytic.hpp"
#include "satshare/config_io.hpp"
#include "satshare/coverage.hpp"
#include "satshare/rng.hpp"
#include "satshare/scene.hpp"
#include "satshare/simulator.hpp"

using namespace satshare;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const ScenarioConfig base = default_scenario();
}

TEST_CASE("random toolkit sanity") {
    Xoshiro256pp rng(42);

    SECTION("poisson mean and variance") {
        for (double mean : {0.7, 3.5, 50.0, 3180.0}) {
            const long n = 20000;
            double sum = 0.0, sq = 0.0;
            for (long i = 0; i < n; ++i) {
                const double k = static_cast<double>(rng.poisson(mean));
                sum += k;
                sq += k * k;
            }
            const double m = sum / n;
            const double var = sq / n - m * m;
            CHECK_THAT(m, WithinRel(mean, 0.03));
            CHECK_THAT(var, WithinRel(mean, 0.05));
        }
        CHECK(rng.poisson(0.0) == 0);
    }
    SECTION("unit-mean gamma fading") {
        for (int m : {1, 3}) {
            const long n = 1000000;
            double sum = 0.0;
            long tail_half = 0, tail_one = 0, tail_two = 0;
            for (long i = 0; i < n; ++i) {
                const double x = rng.gamma_unit_mean(m);
                sum += x;
                tail_half += x >= 0.5;
                tail_one += x >= 1.0;
                tail_two += x >= 2.0;
            }
            CHECK_THAT(sum / n, WithinRel(1.0, 0.01));
            CHECK_THAT(static_cast<double>(tail_half) / n,
                       WithinAbs(nakagami_ccdf(m, 0.5), 0.01));
            CHECK_THAT(static_cast<double>(tail_one) / n,
                       WithinAbs(nakagami_ccdf(m, 1.0), 0.01));
            CHECK_THAT(static_cast<double>(tail_two) / n,
                       WithinAbs(nakagami_ccdf(m, 2.0), 0.01));
        }
    }
}

TEST_CASE("satellite sampling follows the cap law") {
    std::vector<SatelliteNode> sats;

    SECTION("empty when there are no satellites") {
        auto rng = make_trial_rng(1, 2, 3);
        sample_satellites(base.geometry, 0.0, rng, sats);
        CHECK(sats.empty());
    }
    SECTION("distances stay inside the visibility band") {
        auto rng = make_trial_rng(7, 0, 0);
        for (int i = 0; i < 100; ++i) {
            sample_satellites(base.geometry, base.densities.sat_density, rng, sats);
            for (const auto& s : sats) {
                CHECK(s.distance >= base.geometry.min_sat_distance() - 1e-6);
                CHECK(s.distance <= base.geometry.max_sat_distance() + 1e-6);
            }
        }
    }
    SECTION("count matches the Poisson cap mean and variance") {
        const double mean = base.densities.sat_density * base.geometry.visible_cap_area();
        CHECK_THAT(mean, WithinRel(215.85883122815469, 1e-10));
        const long scenes = 10000;
        double sum = 0.0, sq = 0.0;
        for (long i = 0; i < scenes; ++i) {
            auto rng = make_trial_rng(123, 5, static_cast<std::uint64_t>(i));
            sample_satellites(base.geometry, base.densities.sat_density, rng, sats);
            const double k = static_cast<double>(sats.size());
            sum += k;
            sq += k * k;
        }
        const double m = sum / scenes;
        const double var = sq / scenes - m * m;
        CHECK_THAT(m, WithinRel(mean, 0.02));
        CHECK_THAT(var, WithinRel(mean, 0.02));
    }
}

TEST_CASE("base station sampling covers the square") {
    std::vector<BsNode> bss;
    SECTION("empty at zero density") {
        auto rng = make_trial_rng(1, 1, 1);
        sample_base_stations(0.0, 50e3, rng, bss);
        CHECK(bss.empty());
    }
    SECTION("count matches the area mean") {
        const long scenes = 2000;
        double sum = 0.0;
        for (long i = 0; i < scenes; ++i) {
            auto rng = make_trial_rng(99, 6, static_cast<std::uint64_t>(i));
            sample_base_stations(base.densities.bs_density, 50e3, rng, bss);
            sum += static_cast<double>(bss.size());
        }
        CHECK_THAT(sum / scenes, WithinRel(3180.0, 0.02));
    }
    SECTION("nearest distance is Rayleigh") {
        const double lam = base.densities.bs_density;
        std::vector<double> nearest;
        for (long i = 0; i < 20000; ++i) {
            auto rng = make_trial_rng(2024, 7, static_cast<std::uint64_t>(i));
            sample_base_stations(lam, 10e3, rng, bss);
            double best = 1e18;
            for (const auto& b : bss) best = std::min(best, b.distance);
            if (!bss.empty()) nearest.push_back(best);
        }
        const double ks =
            oracle::ks_distance(nearest, [&](double l) { return bs_distance_cdf(lam, l); });
        CHECK(ks < 0.012);
    }
}

TEST_CASE("protection-zone classification") {
    SECTION("no BS means shared") {
        Scene s;
        CHECK(classify_typical_ntn_user(s, 5e3) == NtnUserBand::Shared);
    }
    SECTION("zero radius is effectively always shared") {
        Scene s;
        s.base_stations.push_back({100.0, 0.0, 100.0, 1.0, true});
        CHECK(classify_typical_ntn_user(s, 0.0) == NtnUserBand::Shared);
        CHECK(classify_typical_ntn_user(s, 200.0) == NtnUserBand::Reserved);
    }
    SECTION("empirical void probability matches the closed form") {
        ScenarioConfig c = base;
        c.spectrum.protection_radius = 1e3;
        c.sim_region_half_width = 10e3;
        const auto est = estimate_void_probability(c, {100000, 31, 0});
        const double want = std::exp(-pi * c.densities.bs_density * 1e6);
        CHECK_THAT(est.mean, WithinAbs(want, 0.01));
        CHECK(est.half_width95 < 0.005);
    }
}

namespace {

// serving satellite at 600 km, one interferer at 900 km, unit fading
Scene two_satellite_scene() {
    Scene s;
    s.satellites.push_back({1.0, 0.0, 600e3, 1.0, true, true});
    s.satellites.push_back({0.99, 0.0, 900e3, 1.0, true, true});
    return s;
}

ScenarioConfig hand_cfg() {
    ScenarioConfig c = default_scenario();
    c.noise.mode = NoiseMode::Explicit;
    c.noise.explicit_power = 0.0;
    return c;
}

} // namespace

TEST_CASE("per-scene SINR arithmetic") {
    const auto cfg = hand_cfg();

    SECTION("two-satellite shared-band scene") {
        const Scene s = two_satellite_scene();
        const auto sinr = sinr_shared(s, cfg);
        REQUIRE(sinr);
        // gain ratio 10, distance ratio (900/600)^2
        CHECK_THAT(*sinr, WithinRel(22.5, 1e-12));
    }
    SECTION("serving the farther satellite is worse") {
        Scene s = two_satellite_scene();
        std::swap(s.satellites[0].distance, s.satellites[1].distance);
        const auto sinr = sinr_shared(s, cfg);
        REQUIRE(sinr);
        CHECK(*sinr < 22.5);
        CHECK_THAT(*sinr, WithinRel(10.0 * std::pow(600.0 / 900.0, 2.0), 1e-12));
    }
    SECTION("reserved band ignores shared-active interferers") {
        const Scene s = two_satellite_scene();
        const auto sinr = sinr_reserved(s, cfg);
        REQUIRE(sinr);
        CHECK(std::isinf(*sinr)); // zero interference, zero noise

        Scene r = s;
        r.satellites[1].shared_active = false;
        const auto sinr2 = sinr_reserved(r, cfg);
        REQUIRE(sinr2);
        CHECK_THAT(*sinr2, WithinRel(22.5, 1e-12));
    }
    SECTION("empty scenes are discarded") {
        Scene s;
        CHECK_FALSE(sinr_shared(s, cfg).has_value());
        CHECK_FALSE(sinr_reserved(s, cfg).has_value());
        CHECK_FALSE(sinr_tn(s, cfg).has_value());
    }
    SECTION("tn user uses the nearest BS and skips the serving node") {
        Scene s;
        s.base_stations.push_back({1000.0, 0.0, 1000.0, 1.0, true});
        s.base_stations.push_back({0.0, 2000.0, 2000.0, 1.0, true});
        const auto sinr = sinr_tn(s, cfg);
        REQUIRE(sinr);
        CHECK_THAT(*sinr, WithinRel(std::pow(2000.0 / 1000.0, 3.5), 1e-12));
    }
}

TEST_CASE("interference-free noise-free class covers every threshold") {
    // A zero-radius zone keeps every satellite shared-active, so the reserved
    // user sees no interferer at all.
    ScenarioConfig c = hand_cfg();
    c.spectrum.protection_radius = 0.0;
    const double thresholds[] = {1.0, 1e3, 1e9};
    const auto curve = estimate_coverage_curve(c, UserClass::NtnReserved, thresholds,
                                               {2000, 5, 0});
    for (const auto& p : curve.points) CHECK(p.probability == 1.0);
}

TEST_CASE("estimator bookkeeping") {
    SECTION("discarded trials are counted and excluded") {
        ScenarioConfig c = base;
        c.densities.sat_density = 2e-14; // ~0.43 visible satellites on average
        const double thresholds[] = {1.0};
        const auto curve =
            estimate_coverage_curve(c, UserClass::NtnReserved, thresholds, {4000, 17, 0});
        CHECK(curve.discarded > 1000);
        CHECK(curve.discarded < 4000);
        CHECK(curve.points[0].probability >= 0.0);
        CHECK(curve.points[0].probability <= 1.0);
    }
    SECTION("all-discarded raises a descriptive error") {
        ScenarioConfig c = base;
        c.densities.sat_density = 1e-30;
        const double thresholds[] = {1.0};
        CHECK_THROWS_WITH(
            estimate_coverage_curve(c, UserClass::NtnReserved, thresholds, {32, 1, 0}),
            Catch::Matchers::ContainsSubstring("no satellite"));
    }
    SECTION("unsorted thresholds rejected") {
        const double thresholds[] = {2.0, 1.0};
        CHECK_THROWS_AS(estimate_coverage_curve(base, UserClass::Tn, thresholds, {8, 1, 0}),
                        std::invalid_argument);
    }
}

TEST_CASE("determinism contracts") {
    const double thresholds[] = {0.5, 1.0, 2.0};
    ScenarioConfig c = base;
    c.sim_region_half_width = 10e3; // keep the trial cost small

    const auto a = estimate_coverage_curve(c, UserClass::Tn, thresholds, {6000, 404, 1});
    const auto b = estimate_coverage_curve(c, UserClass::Tn, thresholds, {6000, 404, 4});
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].probability == b.points[i].probability);
        CHECK(a.points[i].half_width == b.points[i].half_width);
    }
    CHECK(a.discarded == b.discarded);

    const auto other = estimate_coverage_curve(c, UserClass::Tn, thresholds, {6000, 405, 0});
    bool any_diff = false;
    for (std::size_t i = 0; i < a.points.size(); ++i)
        any_diff |= a.points[i].probability != other.points[i].probability;
    CHECK(any_diff);
}

TEST_CASE("simulated rate report") {
    SECTION("band guards match the analytic ones") {
        ScenarioConfig c = base;
        c.spectrum.shared_fraction = 0.0;
        c.sim_region_half_width = 10e3;
        const auto r = estimate_adr_report(c, {3000, 9, 0});
        CHECK(r.adr_ntn_shared == 0.0);
        CHECK(r.adr_tn == 0.0);
        CHECK(r.adr_ntn_reserved > 0.0);
    }
    SECTION("single-weight projection") {
        ScenarioConfig c = base;
        c.sim_region_half_width = 10e3;
        c.weights.ntn_shared = 1.0;
        c.weights.ntn_reserved = 0.0;
        c.weights.tn = 0.0;
        const auto r = estimate_adr_report(c, {2000, 13, 0});
        CHECK(r.ws_adr == r.adr_ntn_shared);
    }
}

TEST_CASE("cross-engine rate agreement at the quoted configuration") {
    const auto sim = estimate_adr_report(base, {100000, default_seed, 0});
    const auto ana = ws_adr(base);
    CHECK_THAT(sim.adr_ntn_reserved, WithinRel(ana.adr_ntn_reserved, 0.05));
    CHECK_THAT(sim.adr_tn, WithinRel(ana.adr_tn, 0.05));
    CHECK_THAT(sim.adr_ntn_shared, WithinRel(ana.adr_ntn_shared, 0.05));
    CHECK_THAT(sim.ws_adr, WithinRel(ana.ws_adr, 0.05));
}
