#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "w2pt/config.hpp"
#include "w2pt/errors.hpp"
#include "w2pt/runner.hpp"

using namespace w2pt;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string tiny_dynamic(const fs::path& out) {
    std::ostringstream ss;
    ss << "scenario = dynamic-cavity-vacuum\n"
       << "output_dir = " << out.string() << "\n"
       << "grid { n_points = 41 }\n"
       << "time { t_max = 1.0  cfl_factor = 0.2 }\n"
       << "potential { v_max = 50.0  ramp_time = 2.0 }\n"
       << "smearing { sigma_x = 0.5  sigma_t = 0.5 }\n"
       << "mode { numbers = 1 }\n"
       << "output { t00_times = 0.0, 0.5 }\n";
    return ss.str();
}

}  // namespace

TEST_CASE("run writes manifest, outputs, and removes the sentinel") {
    const fs::path dir = fs::temp_directory_path() / "w2pt_test_run";
    fs::remove_all(dir);
    const RunConfig cfg = parse_config_text(tiny_dynamic(dir));
    const RunOutcome out = run_scenario(cfg);
    CHECK(out.exit_code == 0);
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "energy_by_region.csv"));
    CHECK(fs::exists(dir / "nu_series.csv"));
    CHECK(fs::exists(dir / "energy_density.csv"));
    CHECK_FALSE(fs::exists(dir / ".incomplete"));

    // determinism: a second run byte-reproduces every CSV
    const std::string first = slurp(dir / "energy_by_region.csv") + slurp(dir / "nu_series.csv");
    fs::remove_all(dir);
    run_scenario(cfg);
    const std::string second = slurp(dir / "energy_by_region.csv") + slurp(dir / "nu_series.csv");
    CHECK(first == second);
    fs::remove_all(dir);
}

TEST_CASE("energy record identity holds in the outputs") {
    const fs::path dir = fs::temp_directory_path() / "w2pt_test_energy";
    fs::remove_all(dir);
    const RunConfig cfg = parse_config_text(tiny_dynamic(dir));
    const ScenarioSeries series = march_scenario(cfg);
    for (const auto& e : series.energies) {
        CHECK(e.total == doctest::Approx(e.interior + e.exterior).epsilon(1e-10));
    }
    fs::remove_all(dir);
}

TEST_CASE("sweep rejects empty values and unknown parameters") {
    RunConfig cfg = parse_config_text("scenario = purity-sweep\n");
    CHECK_THROWS_AS(run_sweep(cfg, "ramp_time", {}), ConfigError);
    CHECK_THROWS_AS(run_sweep(cfg, "no-such-knob", {1.0}), ConfigError);
    // quality parameters demand the quality scenario
    CHECK_THROWS_AS(run_sweep(cfg, "sharpness", {10.0}), ConfigError);
}

TEST_CASE("oracle compare: engines agree on a small config") {
    const char* text = R"(
scenario = dynamic-cavity-vacuum
grid { n_points = 8 }
time { t_max = 1.0  cfl_factor = 0.3 }
potential { v_max = 40.0  ramp_time = 1.0 }
smearing { sigma_x = 0.7  sigma_t = 0.7 }
)";
    const RunOutcome out = oracle_compare(parse_config_text(text));
    CHECK(out.exit_code == 0);
}

TEST_CASE("check validates without running") {
    const RunOutcome out = check_config(parse_config_text("scenario = stability-scan\n"));
    CHECK(out.exit_code == 0);
}

TEST_CASE("format_g17 round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 2.5e-17, 123456.789}) {
        CHECK(std::stod(format_g17(v)) == v);
    }
}
