#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "satshare/adr.hpp"
#include "satshare/parallel.hpp"
#include "satshare/report.hpp"
#include "satshare/simulator.hpp"

namespace satshare {

struct SweepGrid {
    std::vector<double> rp_values;    // m, strictly increasing
    std::vector<double> omega_values; // in [0,1], strictly increasing
    EngineKind engine = EngineKind::Analytic;
};

inline SweepGrid default_sweep_grid() {
    SweepGrid g;
    for (int i = 0; i <= 20; ++i) g.rp_values.push_back(i * 1000.0);
    for (int i = 0; i <= 20; ++i) g.omega_values.push_back(i * 0.05);
    g.omega_values.back() = 1.0;
    return g;
}

inline void validate_grid(const SweepGrid& g) {
    auto increasing = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] > v[i - 1])) return false;
        return true;
    };
    if (g.rp_values.empty() || g.omega_values.empty())
        throw std::invalid_argument("sweep grid: axes must be nonempty");
    if (!increasing(g.rp_values) || !increasing(g.omega_values))
        throw std::invalid_argument("sweep grid: axes must be strictly increasing");
    for (double rp : g.rp_values)
        if (rp < 0.0) throw std::invalid_argument("sweep grid: rp must be >= 0");
    for (double w : g.omega_values)
        if (w < 0.0 || w > 1.0) throw std::invalid_argument("sweep grid: omega out of [0,1]");
}

struct BestCell {
    std::size_t rp_index = 0;
    std::size_t omega_index = 0;
    AdrReport report;
};

// Strict lexicographic preference on (ws_adr desc, rp asc, omega asc); using it
// as the only ordering makes the selected optimum independent of evaluation order.
inline bool cell_improves(const BestCell& candidate, const BestCell& incumbent) {
    const auto& c = candidate.report;
    const auto& i = incumbent.report;
    if (c.ws_adr != i.ws_adr) return c.ws_adr > i.ws_adr;
    if (c.operating_point.protection_radius != i.operating_point.protection_radius)
        return c.operating_point.protection_radius < i.operating_point.protection_radius;
    return c.operating_point.shared_fraction < i.operating_point.shared_fraction;
}

struct SweepResult {
    SweepGrid grid;
    std::vector<AdrReport> cells; // row-major: rp index outer, omega index inner
    std::optional<BestCell> best;
    long infeasible_count = 0;

    const AdrReport& at(std::size_t rp_idx, std::size_t omega_idx) const {
        return cells[rp_idx * grid.omega_values.size() + omega_idx];
    }

    // Feasible cells matching the optimum exactly.
    std::vector<BestCell> ties() const {
        std::vector<BestCell> out;
        if (!best) return out;
        for_feasible([&](const BestCell& c) {
            if (c.report.ws_adr == best->report.ws_adr) out.push_back(c);
        });
        return out;
    }

    // Feasible cells within the given relative window of the optimum.
    std::vector<BestCell> near_optimal(double rel_window) const {
        std::vector<BestCell> out;
        if (!best) return out;
        const double floor_ws = best->report.ws_adr * (1.0 - rel_window);
        for_feasible([&](const BestCell& c) {
            if (c.report.ws_adr >= floor_ws) out.push_back(c);
        });
        return out;
    }

private:
    template <class Fn>
    void for_feasible(Fn&& fn) const {
        for (std::size_t i = 0; i < grid.rp_values.size(); ++i)
            for (std::size_t j = 0; j < grid.omega_values.size(); ++j) {
                const auto& rep = at(i, j);
                if (rep.feasible()) fn(BestCell{i, j, rep});
            }
    }
};

struct SweepOptions {
    SimOptions sim;            // used by the simulated engine
    AdrSettings adr;           // used by the analytic engine
    int threads = 0;
};

inline ScenarioConfig with_operating_point(ScenarioConfig cfg, double rp, double omega) {
    cfg.spectrum.protection_radius = rp;
    cfg.spectrum.shared_fraction = omega;
    return cfg;
}

inline AdrReport evaluate_point(const ScenarioConfig& cfg, double rp, double omega,
                                EngineKind engine, const SweepOptions& opts = {}) {
    if (rp < 0.0) throw std::invalid_argument("evaluate_point: rp must be >= 0");
    if (omega < 0.0 || omega > 1.0)
        throw std::invalid_argument("evaluate_point: omega out of [0,1]");
    const auto point_cfg = with_operating_point(cfg, rp, omega);
    try {
        return engine == EngineKind::Analytic ? ws_adr(point_cfg, opts.adr)
                                              : estimate_adr_report(point_cfg, opts.sim);
    } catch (const std::exception& e) {
        throw std::runtime_error("evaluate_point at rp=" + std::to_string(rp) +
                                 " m, omega=" + std::to_string(omega) + ": " + e.what());
    }
}

// Exhaustive evaluation of the grid plus the feasibility-constrained argmax.
inline SweepResult sweep(const ScenarioConfig& cfg, const SweepGrid& grid,
                         const SweepOptions& opts = {}) {
    validate_grid(grid);
    SweepResult result;
    result.grid = grid;
    const std::size_t n_rp = grid.rp_values.size();
    const std::size_t n_omega = grid.omega_values.size();
    result.cells.resize(n_rp * n_omega);

    run_chunked(static_cast<long>(n_rp * n_omega), 1, opts.threads,
                [&](long, long begin, long end) {
                    for (long flat = begin; flat < end; ++flat) {
                        const std::size_t i = static_cast<std::size_t>(flat) / n_omega;
                        const std::size_t j = static_cast<std::size_t>(flat) % n_omega;
                        SweepOptions cell_opts = opts;
                        // Per-cell stream so simulated sweeps stay reproducible.
                        cell_opts.sim.seed =
                            mix64(opts.sim.seed + 0x9E3779B97F4A7C15ull *
                                                      (static_cast<std::uint64_t>(flat) + 1));
                        cell_opts.sim.threads = 1;
                        result.cells[static_cast<std::size_t>(flat)] =
                            evaluate_point(cfg, grid.rp_values[i], grid.omega_values[j],
                                           grid.engine, cell_opts);
                    }
                });

    for (std::size_t i = 0; i < n_rp; ++i)
        for (std::size_t j = 0; j < n_omega; ++j) {
            const auto& rep = result.at(i, j);
            if (!rep.feasible()) {
                ++result.infeasible_count;
                continue;
            }
            BestCell candidate{i, j, rep};
            if (!result.best || cell_improves(candidate, *result.best))
                result.best = candidate;
        }
    return result;
}

} // namespace satshare
