#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "satshare/adr.hpp"
#include "satshare/parallel.hpp"
#include "satshare/report.hpp"
#include "satshare/scene.hpp"

namespace satshare {

inline constexpr std::uint64_t default_seed = 1729;

struct SimOptions {
    long trials = 100000;
    std::uint64_t seed = default_seed;
    int threads = 0; // 0 = hardware concurrency
};

namespace detail {

inline constexpr long chunk_trials = 4096;

inline std::uint64_t class_stream(UserClass uc, std::uint64_t salt) {
    return salt + static_cast<std::uint64_t>(uc);
}

inline SceneOptions scene_options_for(const ScenarioConfig& cfg, UserClass uc) {
    SceneOptions opts;
    switch (uc) {
    case UserClass::NtnShared:
        // Shared-band membership conditions the BS field on an empty disc.
        opts.bs_exclusion_radius = cfg.spectrum.protection_radius;
        break;
    case UserClass::NtnReserved:
        // Reserved-band SINR never sees the BS field.
        opts.with_base_stations = false;
        break;
    case UserClass::Tn:
        break;
    }
    return opts;
}

inline std::optional<double> scene_sinr(const Scene& scene, const ScenarioConfig& cfg,
                                        UserClass uc) {
    switch (uc) {
    case UserClass::NtnShared: return sinr_shared(scene, cfg);
    case UserClass::NtnReserved: return sinr_reserved(scene, cfg);
    case UserClass::Tn: return sinr_tn(scene, cfg);
    }
    throw std::logic_error("scene_sinr: bad class");
}

inline const char* discard_reason(UserClass uc) {
    return uc == UserClass::Tn ? "no base station in the simulation region"
                               : "no satellite above the horizon";
}

} // namespace detail

// Empirical CCDF of the class SINR over sampled scenes. Common random numbers:
// one scene serves every threshold, so the curve is monotone by construction.
inline CoverageCurve estimate_coverage_curve(const ScenarioConfig& cfg, UserClass uc,
                                             std::span<const double> thresholds,
                                             const SimOptions& opts) {
    if (opts.trials < 1)
        throw std::invalid_argument("estimate_coverage_curve: trials must be >= 1");
    if (thresholds.empty())
        throw std::invalid_argument("estimate_coverage_curve: no thresholds");
    if (!std::is_sorted(thresholds.begin(), thresholds.end()))
        throw std::invalid_argument("estimate_coverage_curve: thresholds must be ascending");

    const auto scene_opts = detail::scene_options_for(cfg, uc);
    const std::uint64_t stream = detail::class_stream(uc, 1);
    const std::size_t nt = thresholds.size();
    const long n_chunks = (opts.trials + detail::chunk_trials - 1) / detail::chunk_trials;

    // hist[c][i] counts trials whose SINR lies below thresholds[i] but at or
    // above thresholds[i-1]; suffix-summing yields coverage counts.
    std::vector<std::vector<long>> hist(static_cast<std::size_t>(n_chunks),
                                        std::vector<long>(nt + 1, 0));
    std::vector<long> chunk_discarded(static_cast<std::size_t>(n_chunks), 0);

    run_chunked(opts.trials, detail::chunk_trials, opts.threads,
                [&](long chunk, long begin, long end) {
                    Scene scene;
                    auto& h = hist[static_cast<std::size_t>(chunk)];
                    long disc = 0;
                    for (long t = begin; t < end; ++t) {
                        auto rng = make_trial_rng(opts.seed, stream, static_cast<std::uint64_t>(t));
                        assemble_scene(cfg, rng, scene_opts, scene);
                        const auto sinr = detail::scene_sinr(scene, cfg, uc);
                        if (!sinr) {
                            ++disc;
                            continue;
                        }
                        const auto it = std::upper_bound(thresholds.begin(), thresholds.end(),
                                                         *sinr);
                        h[static_cast<std::size_t>(it - thresholds.begin())] += 1;
                    }
                    chunk_discarded[static_cast<std::size_t>(chunk)] = disc;
                });

    std::vector<long> merged(nt + 1, 0);
    long discarded = 0;
    for (long c = 0; c < n_chunks; ++c) {
        for (std::size_t i = 0; i <= nt; ++i) merged[i] += hist[static_cast<std::size_t>(c)][i];
        discarded += chunk_discarded[static_cast<std::size_t>(c)];
    }
    const long effective = opts.trials - discarded;
    if (effective <= 0)
        throw std::runtime_error(std::string("estimate_coverage_curve: all trials discarded (") +
                                 detail::discard_reason(uc) + ")");

    CoverageCurve curve;
    curve.user_class = uc;
    curve.source = EngineKind::Simulated;
    curve.trials = opts.trials;
    curve.discarded = discarded;
    curve.points.reserve(nt);
    long covered = effective;
    for (std::size_t i = 0; i < nt; ++i) {
        covered -= merged[i]; // drop trials that failed before threshold i
        const double p = static_cast<double>(covered) / static_cast<double>(effective);
        const double half =
            1.96 * std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(effective)));
        curve.points.push_back({thresholds[i], p, half});
    }
    return curve;
}

// Mean spectral efficiency per class scaled by the class density and band.
inline EstimatorResult estimate_mean_rate(const ScenarioConfig& cfg, UserClass uc,
                                          const SimOptions& opts) {
    if (opts.trials < 1)
        throw std::invalid_argument("estimate_mean_rate: trials must be >= 1");
    const auto scene_opts = detail::scene_options_for(cfg, uc);
    const std::uint64_t stream = detail::class_stream(uc, 9);
    const long n_chunks = (opts.trials + detail::chunk_trials - 1) / detail::chunk_trials;

    std::vector<double> sums(static_cast<std::size_t>(n_chunks), 0.0);
    std::vector<double> sq_sums(static_cast<std::size_t>(n_chunks), 0.0);
    std::vector<long> chunk_discarded(static_cast<std::size_t>(n_chunks), 0);

    run_chunked(opts.trials, detail::chunk_trials, opts.threads,
                [&](long chunk, long begin, long end) {
                    Scene scene;
                    double acc = 0.0, acc2 = 0.0;
                    long disc = 0;
                    for (long t = begin; t < end; ++t) {
                        auto rng = make_trial_rng(opts.seed, stream, static_cast<std::uint64_t>(t));
                        assemble_scene(cfg, rng, scene_opts, scene);
                        const auto sinr = detail::scene_sinr(scene, cfg, uc);
                        if (!sinr) {
                            ++disc;
                            continue;
                        }
                        const double rate = std::log2(1.0 + *sinr);
                        acc += rate;
                        acc2 += rate * rate;
                    }
                    sums[static_cast<std::size_t>(chunk)] = acc;
                    sq_sums[static_cast<std::size_t>(chunk)] = acc2;
                    chunk_discarded[static_cast<std::size_t>(chunk)] = disc;
                });

    double sum = 0.0, sq = 0.0;
    long discarded = 0;
    for (long c = 0; c < n_chunks; ++c) {
        sum += sums[static_cast<std::size_t>(c)];
        sq += sq_sums[static_cast<std::size_t>(c)];
        discarded += chunk_discarded[static_cast<std::size_t>(c)];
    }
    const long n = opts.trials - discarded;
    if (n <= 0)
        throw std::runtime_error(std::string("estimate_mean_rate: all trials discarded (") +
                                 detail::discard_reason(uc) + ")");
    EstimatorResult r;
    r.trials = opts.trials;
    r.discarded = discarded;
    r.mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, sq / static_cast<double>(n) - r.mean * r.mean);
    r.half_width95 = 1.96 * std::sqrt(var / static_cast<double>(n));
    return r;
}

// Simulated counterpart of the analytic ADR report: per class
// density * band * mean(log2(1+SINR)) with the thinned class densities.
inline AdrReport estimate_adr_report(const ScenarioConfig& cfg, const SimOptions& opts) {
    const auto d = class_densities(cfg);
    const double b_s = cfg.spectrum.shared_bandwidth();
    const double b_r = cfg.spectrum.reserved_bandwidth();

    auto class_adr = [&](UserClass uc, double density, double band) -> double {
        if (density <= 0.0 || band <= 0.0) return 0.0;
        return density * band * estimate_mean_rate(cfg, uc, opts).mean;
    };

    const double ns = class_adr(UserClass::NtnShared, d.shared_sat, b_s);
    const double nr = class_adr(UserClass::NtnReserved, d.reserved_sat, b_r);
    const double tn = class_adr(UserClass::Tn, d.co_channel_bs, b_s);
    return make_adr_report(cfg, ns, nr, tn);
}

// Fraction of scenes whose protection disc holds no BS.
inline EstimatorResult estimate_void_probability(const ScenarioConfig& cfg,
                                                 const SimOptions& opts) {
    if (opts.trials < 1)
        throw std::invalid_argument("estimate_void_probability: trials must be >= 1");
    const long n_chunks = (opts.trials + detail::chunk_trials - 1) / detail::chunk_trials;
    std::vector<long> shared_counts(static_cast<std::size_t>(n_chunks), 0);

    run_chunked(opts.trials, detail::chunk_trials, opts.threads,
                [&](long chunk, long begin, long end) {
                    Scene probe;
                    long count = 0;
                    for (long t = begin; t < end; ++t) {
                        auto rng = make_trial_rng(opts.seed, 77, static_cast<std::uint64_t>(t));
                        sample_base_stations(cfg.densities.bs_density,
                                             cfg.sim_region_half_width, rng,
                                             probe.base_stations);
                        if (classify_typical_ntn_user(probe, cfg.spectrum.protection_radius) ==
                            NtnUserBand::Shared)
                            ++count;
                    }
                    shared_counts[static_cast<std::size_t>(chunk)] = count;
                });

    long shared = 0;
    for (long c : shared_counts) shared += c;
    EstimatorResult r;
    r.trials = opts.trials;
    r.mean = static_cast<double>(shared) / static_cast<double>(opts.trials);
    r.half_width95 = 1.96 * std::sqrt(std::max(0.0, r.mean * (1.0 - r.mean) /
                                                         static_cast<double>(opts.trials)));
    return r;
}

} // namespace satshare
