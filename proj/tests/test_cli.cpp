#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "satshare/config_io.hpp"
#include "satshare/coverage.hpp"
#include "satshare/csv.hpp"

using namespace satshare;

namespace {

std::string bin() {
    const char* b = std::getenv("SATSHARE_BIN");
    REQUIRE(b != nullptr);
    return b;
}

int run(const std::string& args) {
    const std::string cmd = bin() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempFile {
    explicit TempFile(const std::string& n) : path("cli_tmp_" + n) {}
    ~TempFile() { std::remove(path.c_str()); }
    std::string path;
};

} // namespace

TEST_CASE("defaults command emits a loadable scenario") {
    TempFile cfg("defaults.json");
    REQUIRE(run("defaults -o " + cfg.path) == 0);
    const ScenarioConfig c = load_scenario(cfg.path);
    const ScenarioConfig want = default_scenario();
    CHECK(c.spectrum.protection_radius == want.spectrum.protection_radius);
    CHECK(c.ntn.tx_power == want.ntn.tx_power);
    CHECK(c.weights.ntn_reserved == want.weights.ntn_reserved);
    CHECK(c.densities.bs_density == want.densities.bs_density);
}

TEST_CASE("coverage command") {
    TempFile out("cov.csv");
    const std::string args =
        "coverage -e analytic --theta-start-db -4 --theta-stop-db 4 --theta-step-db 4 -o " +
        out.path;
    REQUIRE(run(args) == 0);

    const auto rows = read_coverage_csv(out.path);
    REQUIRE(rows.size() == 3 * 3); // 3 classes x 3 thresholds, analytic only

    const ScenarioConfig cfg = default_scenario();
    for (const auto& r : rows) {
        CHECK(r.engine == "analytic");
        CHECK(r.ci_halfwidth == 0.0);
        UserClass uc = r.user_class == "ntn_shared"     ? UserClass::NtnShared
                       : r.user_class == "ntn_reserved" ? UserClass::NtnReserved
                                                        : UserClass::Tn;
        CHECK(r.probability == analytic_coverage(cfg, uc, db_to_ratio(r.threshold_db)));
    }

    SECTION("reruns are byte-identical") {
        TempFile again("cov2.csv");
        const std::string args2 =
            "coverage -e both --trials 1500 --seed 7 --theta-start-db 0 --theta-stop-db 4 "
            "--theta-step-db 2 -o ";
        REQUIRE(run(args2 + again.path) == 0);
        TempFile third("cov3.csv");
        REQUIRE(run(args2 + third.path) == 0);
        CHECK(slurp(again.path) == slurp(third.path));
    }
    SECTION("empty threshold sweep is a usage error") {
        CHECK(run("coverage --theta-start-db 10 --theta-stop-db 0 -o " + out.path) == 1);
    }
}

TEST_CASE("adr and sweep agree on a degenerate grid") {
    TempFile adr_out("adr.csv");
    TempFile sweep_out("sweep.csv");
    REQUIRE(run("adr --rp-km 12 --omega 0.5 -o " + adr_out.path) == 0);
    REQUIRE(run("sweep --rp-start-km 12 --rp-stop-km 12 --omega-start 0.5 --omega-stop 0.5 "
                "-o " +
                sweep_out.path) == 0);
    CHECK(slurp(adr_out.path) == slurp(sweep_out.path));

    const ScenarioConfig cfg = default_scenario();
    const auto rows = read_sweep_csv(sweep_out.path, cfg.weights.ntn_shared,
                                     cfg.weights.ntn_reserved, cfg.weights.tn);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].rp_m == 12e3);
    CHECK(rows[0].omega_s == 0.5);
    CHECK(rows[0].feasible);
}

TEST_CASE("sweep emits one row per grid cell and reruns identically") {
    TempFile out("grid.csv");
    const std::string args =
        "sweep --rp-start-km 0 --rp-stop-km 2 --rp-step-km 1 "
        "--omega-start 0 --omega-stop 1 --omega-step 0.5 -o ";
    REQUIRE(run(args + out.path) == 0);
    const ScenarioConfig cfg = default_scenario();
    const auto rows = read_sweep_csv(out.path, cfg.weights.ntn_shared,
                                     cfg.weights.ntn_reserved, cfg.weights.tn);
    CHECK(rows.size() == 9);

    TempFile again("grid2.csv");
    REQUIRE(run(args + again.path) == 0);
    CHECK(slurp(out.path) == slurp(again.path));
}

TEST_CASE("bad inputs map to the documented exit codes") {
    CHECK(run("no-such-command") == 1);
    CHECK(run("coverage --bogus-flag 3") == 1);

    TempFile bad("bad.json");
    {
        std::ofstream out(bad.path);
        out << "{ not json";
    }
    CHECK(run("adr -c " + bad.path) == 2);

    TempFile invalid("invalid.json");
    {
        auto root = detail::json::parse(default_scenario_text());
        root["spectrum"]["shared_fraction"] = 1.3;
        std::ofstream out(invalid.path);
        out << root.dump(2);
    }
    CHECK(run("adr -c " + invalid.path) == 2);

    TempFile unknown("unknown.json");
    {
        auto root = detail::json::parse(default_scenario_text());
        root["extra_section"] = 1;
        std::ofstream out(unknown.path);
        out << root.dump(2);
    }
    CHECK(run("adr -c " + unknown.path) == 2);
}

TEST_CASE("simulate-scene dumps a node table") {
    TempFile out("scene.tsv");
    REQUIRE(run("simulate-scene --seed 3 -o " + out.path) == 0);
    const std::string text = slurp(out.path);
    CHECK(text.find("# seed\t3") != std::string::npos);
    CHECK(text.find("node\tx_m\ty_m\tz_m\tdistance_m\tfading") != std::string::npos);
    CHECK(text.find("satellite\t") != std::string::npos);
    CHECK(text.find("base_station\t") != std::string::npos);

    TempFile again("scene2.tsv");
    REQUIRE(run("simulate-scene --seed 3 -o " + again.path) == 0);
    CHECK(slurp(out.path) == slurp(again.path));
}

TEST_CASE("optimize prints the constrained best") {
    TempFile out("opt.txt");
    const int code = std::system((bin() +
                                  " optimize --rp-start-km 0 --rp-stop-km 2 --rp-step-km 2 "
                                  "--omega-start 0 --omega-stop 1 --omega-step 0.5 > " +
                                  out.path + " 2>/dev/null")
                                     .c_str());
    REQUIRE(WIFEXITED(code));
    REQUIRE(WEXITSTATUS(code) == 0);
    const std::string text = slurp(out.path);
    CHECK(text.find("best: rp_m=") != std::string::npos);
    CHECK(text.find("ties: ") != std::string::npos);
    CHECK(text.find("near_optimal: ") != std::string::npos);
}
