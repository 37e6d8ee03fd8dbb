// Command-line front end: scenario ingestion, coverage curves, ADR point
// evaluation, grid sweeps and the constrained optimum, CSV/plot-data output.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "satshare/adr.hpp"
#include "satshare/config_io.hpp"
#include "satshare/coverage.hpp"
#include "satshare/csv.hpp"
#include "satshare/optimizer.hpp"
#include "satshare/simulator.hpp"

namespace {

using namespace satshare;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_validation = 2;
constexpr int exit_numeric = 3;

std::vector<double> make_axis(double start, double stop, double step, const char* what) {
    if (step <= 0.0) throw std::invalid_argument(std::string(what) + ": step must be > 0");
    if (stop < start)
        throw std::invalid_argument(std::string(what) + ": empty range (stop < start)");
    const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> axis;
    axis.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) axis.push_back(std::min(start + i * step, stop));
    return axis;
}

struct CommonOpts {
    std::string config_path;
    std::string engine = "analytic";
    std::uint64_t seed = default_seed;
    long trials = 100000;
    int threads = 0;
    std::string output;
    bool gnuplot = false;
};

ScenarioConfig load_config(const CommonOpts& o) {
    if (o.config_path.empty()) return default_scenario();
    return load_scenario(o.config_path);
}

std::ostream& open_output(const CommonOpts& o, std::ofstream& file) {
    if (o.output.empty()) return std::cout;
    file.open(o.output, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + o.output + "'");
    return file;
}

std::string feasible_flag(bool b) { return b ? "1" : "0"; }

// ---- coverage ----

struct CoverageOpts {
    CommonOpts common;
    double theta_start_db = -10.0;
    double theta_stop_db = 20.0;
    double theta_step_db = 2.0;
    std::optional<double> rp_km;
    std::optional<double> omega;
};

void write_coverage_rows(std::ostream& os, const CoverageCurve& curve,
                         const std::vector<double>& thresholds_db, bool gnuplot) {
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const char sep = gnuplot ? ' ' : ',';
        os << format_double(thresholds_db[i]) << sep << to_string(curve.user_class) << sep
           << to_string(curve.source) << sep << format_double(curve.points[i].probability)
           << sep << format_double(curve.points[i].half_width) << '\n';
    }
    if (gnuplot) os << "\n\n"; // dataset separator for plot indexing
}

int run_coverage(const CoverageOpts& o) {
    ScenarioConfig cfg = load_config(o.common);
    if (o.rp_km) cfg.spectrum.protection_radius = *o.rp_km * 1e3;
    if (o.omega) cfg.spectrum.shared_fraction = *o.omega;
    require_valid(cfg);

    const auto thresholds_db =
        make_axis(o.theta_start_db, o.theta_stop_db, o.theta_step_db, "threshold sweep");
    std::vector<double> thresholds(thresholds_db.size());
    for (std::size_t i = 0; i < thresholds.size(); ++i)
        thresholds[i] = db_to_ratio(thresholds_db[i]);

    const bool analytic = o.common.engine == "analytic" || o.common.engine == "both";
    const bool simulated = o.common.engine == "simulated" || o.common.engine == "both";
    if (!analytic && !simulated)
        throw std::invalid_argument("engine must be analytic|simulated|both");

    std::vector<CoverageCurve> curves;
    for (UserClass uc : {UserClass::NtnShared, UserClass::NtnReserved, UserClass::Tn}) {
        if (analytic) curves.push_back(analytic_coverage_curve(cfg, uc, thresholds));
        if (simulated)
            curves.push_back(estimate_coverage_curve(
                cfg, uc, thresholds, {o.common.trials, o.common.seed, o.common.threads}));
    }

    std::ofstream file;
    std::ostream& os = open_output(o.common, file);
    if (!o.common.gnuplot) os << coverage_csv_header << '\n';
    else os << "# threshold_db class engine probability ci_halfwidth\n";
    for (const auto& c : curves) write_coverage_rows(os, c, thresholds_db, o.common.gnuplot);
    os.flush();

    // Emitted tables must reproduce the in-memory results when parsed back.
    if (!o.common.output.empty() && !o.common.gnuplot) {
        const auto rows = read_coverage_csv(o.common.output);
        std::size_t k = 0;
        for (const auto& c : curves)
            for (const auto& p : c.points) {
                if (rows.at(k).probability != p.probability ||
                    rows.at(k).ci_halfwidth != p.half_width)
                    throw std::runtime_error("coverage CSV round-trip mismatch");
                ++k;
            }
    }
    return exit_ok;
}

// ---- adr / sweep / optimize ----

struct GridOpts {
    CommonOpts common;
    double rp_start_km = 0.0, rp_stop_km = 20.0, rp_step_km = 1.0;
    double omega_start = 0.0, omega_stop = 1.0, omega_step = 0.05;
    double window = 0.01;
};

EngineKind parse_engine(const std::string& s) {
    if (s == "analytic") return EngineKind::Analytic;
    if (s == "simulated") return EngineKind::Simulated;
    throw std::invalid_argument("engine must be analytic|simulated for this command");
}

void write_sweep_row(std::ostream& os, const AdrReport& r, bool gnuplot) {
    const char sep = gnuplot ? ' ' : ',';
    os << format_double(r.operating_point.protection_radius) << sep
       << format_double(r.operating_point.shared_fraction) << sep
       << format_double(r.adr_ntn_shared) << sep << format_double(r.adr_ntn_reserved) << sep
       << format_double(r.adr_tn) << sep << format_double(r.ws_adr) << sep
       << feasible_flag(r.feasible()) << '\n';
}

struct AdrOpts {
    CommonOpts common;
    std::optional<double> rp_km;
    std::optional<double> omega;
};

int run_adr(const AdrOpts& o) {
    ScenarioConfig cfg = load_config(o.common);
    require_valid(cfg);
    const double rp = o.rp_km ? *o.rp_km * 1e3 : cfg.spectrum.protection_radius;
    const double omega = o.omega ? *o.omega : cfg.spectrum.shared_fraction;

    SweepOptions opts;
    opts.sim = {o.common.trials, o.common.seed, o.common.threads};
    const auto report = evaluate_point(cfg, rp, omega, parse_engine(o.common.engine), opts);

    std::ofstream file;
    std::ostream& os = open_output(o.common, file);
    os << sweep_csv_header << '\n';
    write_sweep_row(os, report, false);
    os.flush();
    return exit_ok;
}

SweepResult run_grid(const GridOpts& o, const ScenarioConfig& cfg) {
    SweepGrid grid;
    for (double km : make_axis(o.rp_start_km, o.rp_stop_km, o.rp_step_km, "rp grid"))
        grid.rp_values.push_back(km * 1e3);
    grid.omega_values = make_axis(o.omega_start, o.omega_stop, o.omega_step, "omega grid");
    grid.engine = parse_engine(o.common.engine);

    SweepOptions opts;
    opts.sim = {o.common.trials, o.common.seed, o.common.threads};
    opts.threads = o.common.threads;
    return sweep(cfg, grid, opts);
}

void print_best(std::ostream& os, const SweepResult& res, double window) {
    if (!res.best) {
        os << "best: none (all " << res.cells.size() << " cells infeasible)\n";
        return;
    }
    const auto& b = *res.best;
    os << "best: rp_m=" << format_double(b.report.operating_point.protection_radius)
       << " omega_s=" << format_double(b.report.operating_point.shared_fraction)
       << " ws_adr=" << format_double(b.report.ws_adr) << '\n';
    const auto ties = res.ties();
    os << "ties: " << ties.size() << " cell(s) at the optimum";
    for (const auto& t : ties)
        os << " (" << format_double(t.report.operating_point.protection_radius) << ","
           << format_double(t.report.operating_point.shared_fraction) << ")";
    os << '\n';
    const auto near = res.near_optimal(window);
    os << "near_optimal: " << near.size() << " cell(s) within "
       << format_double(window * 100.0) << "% of the optimum\n";
    os << "infeasible: " << res.infeasible_count << " cell(s)\n";
}

int run_sweep(const GridOpts& o, bool optimize_only) {
    const ScenarioConfig cfg = load_config(o.common);
    require_valid(cfg);
    const auto res = run_grid(o, cfg);

    if (!o.common.output.empty()) {
        std::ofstream file;
        std::ostream& os = open_output(o.common, file);
        if (!o.common.gnuplot) {
            os << sweep_csv_header << '\n';
            for (const auto& cell : res.cells) write_sweep_row(os, cell, false);
        } else {
            os << "# rp_m omega_s adr_ns adr_nr adr_t ws_adr feasible\n";
            for (std::size_t i = 0; i < res.grid.rp_values.size(); ++i) {
                for (std::size_t j = 0; j < res.grid.omega_values.size(); ++j)
                    write_sweep_row(os, res.at(i, j), true);
                os << '\n'; // grid row separator for splot
            }
        }
        os.flush();
        if (!o.common.gnuplot) {
            const auto rows =
                read_sweep_csv(o.common.output, cfg.weights.ntn_shared,
                               cfg.weights.ntn_reserved, cfg.weights.tn);
            if (rows.size() != res.cells.size())
                throw std::runtime_error("sweep CSV round-trip mismatch");
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (rows[i].ws_adr != res.cells[i].ws_adr)
                    throw std::runtime_error("sweep CSV round-trip mismatch");
        }
    } else if (!optimize_only) {
        throw std::invalid_argument("sweep: --output is required");
    }

    print_best(std::cout, res, o.window);
    return exit_ok;
}

// ---- simulate-scene ----

struct SceneOpts {
    CommonOpts common;
};

int run_scene(const SceneOpts& o) {
    const ScenarioConfig cfg = load_config(o.common);
    require_valid(cfg);
    auto rng = make_trial_rng(o.common.seed, 0, 0);
    Scene scene;
    scene.rng_seed = o.common.seed;
    assemble_scene(cfg, rng, {}, scene);

    std::ofstream file;
    std::ostream& os = open_output(o.common, file);
    os << "# seed\t" << o.common.seed << '\n';
    os << "# typical_ntn_user\t"
       << (classify_typical_ntn_user(scene, cfg.spectrum.protection_radius) ==
                   NtnUserBand::Shared
               ? "shared"
               : "reserved")
       << '\n';
    write_scene_tsv(os, scene, cfg);
    os.flush();
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"satshare: coverage and area-data-rate evaluation for "
                 "satellite-terrestrial spectrum sharing with ground protection zones"};
    app.require_subcommand(1);

    auto add_common = [](CLI::App* cmd, CommonOpts& c, bool with_engine = true) {
        cmd->add_option("-c,--config", c.config_path,
                        "scenario JSON (defaults to the built-in scenario)");
        if (with_engine)
            cmd->add_option("-e,--engine", c.engine, "analytic|simulated|both");
        cmd->add_option("--seed", c.seed, "RNG seed (default 1729)");
        cmd->add_option("--trials", c.trials, "Monte Carlo trials per estimate");
        cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)");
        cmd->add_option("-o,--output", c.output, "output file (default stdout)");
    };

    CoverageOpts cov;
    auto* cov_cmd = app.add_subcommand("coverage", "coverage probability vs SINR threshold");
    add_common(cov_cmd, cov.common);
    cov_cmd->add_option("--theta-start-db", cov.theta_start_db, "first threshold (dB)");
    cov_cmd->add_option("--theta-stop-db", cov.theta_stop_db, "last threshold (dB)");
    cov_cmd->add_option("--theta-step-db", cov.theta_step_db, "threshold step (dB)");
    cov_cmd->add_option("--rp-km", cov.rp_km, "override protection radius (km)");
    cov_cmd->add_option("--omega", cov.omega, "override shared fraction");
    cov_cmd->add_flag("--gnuplot", cov.common.gnuplot, "space-separated plot blocks");

    AdrOpts adr;
    auto* adr_cmd = app.add_subcommand("adr", "area data rates at one operating point");
    add_common(adr_cmd, adr.common);
    adr_cmd->add_option("--rp-km", adr.rp_km, "override protection radius (km)");
    adr_cmd->add_option("--omega", adr.omega, "override shared fraction");

    GridOpts grid;
    auto* sweep_cmd = app.add_subcommand("sweep", "ADR grid over (rp, omega)");
    add_common(sweep_cmd, grid.common);
    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--rp-start-km", grid.rp_start_km);
        cmd->add_option("--rp-stop-km", grid.rp_stop_km);
        cmd->add_option("--rp-step-km", grid.rp_step_km);
        cmd->add_option("--omega-start", grid.omega_start);
        cmd->add_option("--omega-stop", grid.omega_stop);
        cmd->add_option("--omega-step", grid.omega_step);
        cmd->add_option("--window", grid.window, "near-optimal relative window");
    };
    add_grid(sweep_cmd);
    sweep_cmd->add_flag("--gnuplot", grid.common.gnuplot, "space-separated grid blocks");

    GridOpts opt = grid;
    auto* opt_cmd = app.add_subcommand("optimize", "constrained WS-ADR maximization");
    add_common(opt_cmd, opt.common);
    {
        opt_cmd->add_option("--rp-start-km", opt.rp_start_km);
        opt_cmd->add_option("--rp-stop-km", opt.rp_stop_km);
        opt_cmd->add_option("--rp-step-km", opt.rp_step_km);
        opt_cmd->add_option("--omega-start", opt.omega_start);
        opt_cmd->add_option("--omega-stop", opt.omega_stop);
        opt_cmd->add_option("--omega-step", opt.omega_step);
        opt_cmd->add_option("--window", opt.window, "near-optimal relative window");
    }

    SceneOpts scene;
    auto* scene_cmd =
        app.add_subcommand("simulate-scene", "dump one sampled network realization");
    add_common(scene_cmd, scene.common, false);

    CommonOpts defaults_opts;
    auto* def_cmd = app.add_subcommand("defaults", "emit the default scenario file");
    def_cmd->add_option("-o,--output", defaults_opts.output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*def_cmd) {
            std::ofstream file;
            std::ostream& os = open_output(defaults_opts, file);
            os << default_scenario_text();
            return exit_ok;
        }
        if (*cov_cmd) return run_coverage(cov);
        if (*adr_cmd) return run_adr(adr);
        if (*sweep_cmd) return run_sweep(grid, false);
        if (*opt_cmd) return run_sweep(opt, true);
        if (*scene_cmd) return run_scene(scene);
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
}
