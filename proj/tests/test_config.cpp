#include <doctest.h>

#include "w2pt/config.hpp"
#include "w2pt/errors.hpp"

using namespace w2pt;

namespace {
const char* kGood = R"(
scenario = dynamic-cavity-vacuum
output_dir = out

grid {
  length = 10.0
  n_points = 201
}
time {
  t_max = 12.0
  cfl_factor = 0.05
}
potential {
  v_max = 250.0
  ramp_time = 10.0
}
smearing {
  sigma_x = 0.1
  sigma_t = 0.1
}
state { kind = vacuum }
region { x_left = 2.4  x_right = 7.6 }
mode { numbers = 1, 9 }
)";
}

TEST_CASE("a complete config parses with defaults filled in") {
    const RunConfig cfg = parse_config_text(kGood);
    CHECK(cfg.scenario == Scenario::dynamic_cavity_vacuum);
    CHECK(cfg.n_points == 201);
    CHECK(cfg.t_max == doctest::Approx(12.0));
    CHECK(cfg.mode_numbers == std::vector<int>{1, 9});
    CHECK(cfg.potential_params.x_left_wall == doctest::Approx(3.0));  // default
    CHECK(cfg.mode_region.x_left == doctest::Approx(3.0));
    CHECK(cfg.raw_text == kGood);
}

TEST_CASE("unknown keys and sections are errors") {
    CHECK_THROWS_AS(parse_config_text("scnario = convergence\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("grid { lenght = 10 }\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("gird { length = 10 }\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("scenario = does-not-exist\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("grid { length = 10\nlength = 11 }\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("grid { length = ten }\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("grid {\n"), ConfigError);
}

TEST_CASE("cross-field validation") {
    // region outside the box
    CHECK_THROWS_AS(parse_config_text("region { x_left = 2.0  x_right = 12.0 }\n"), ConfigError);
    // scenario/state compatibility
    CHECK_THROWS_AS(parse_config_text("scenario = dynamic-cavity-vacuum\nstate { kind = wavepacket }\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("scenario = static-cavity-wavepacket\nstate { kind = vacuum }\n"),
                    ConfigError);
    // CFL violation: uniform mass 2450 at dx = 0.05 caps dt below 0.05*0.9
    const char* cfl = R"(
scenario = dynamic-cavity-vacuum
grid { n_points = 201 }
time { cfl_factor = 0.9 }
potential { model = uniform-mass  mass = 70.0 }
)";
    CHECK_THROWS_AS(parse_config_text(cfl), CflError);
}

TEST_CASE("scenario default horizons") {
    RunConfig cfg = parse_config_text("scenario = dynamic-cavity-vacuum\n");
    // ramp + three light crossings of the mode cavity + margin
    CHECK(cfg.scenario_t_max() == doctest::Approx(10.0 + 3.0 * 4.0 + 0.5));
    cfg = parse_config_text("scenario = static-cavity-wavepacket\nstate { kind = wavepacket }\n");
    CHECK(cfg.scenario_t_max() == doctest::Approx(5.2 + 0.5));
}
