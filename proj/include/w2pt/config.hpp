#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "w2pt/evolution.hpp"
#include "w2pt/observables.hpp"

namespace w2pt {

enum class Scenario {
    static_cavity_wavepacket,
    dynamic_cavity_vacuum,
    purity_sweep,
    quality_sweep,
    convergence,
    stability_scan,
};

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

/// Fully validated run description. Parsed from the flat sectioned
/// key = value format; unknown sections or keys are errors.
struct RunConfig {
    Scenario scenario = Scenario::dynamic_cavity_vacuum;
    std::string output_dir;

    // grid { }
    double length = 10.0;
    int n_points = 201;

    // time { }
    double t_max = 0.0;  // 0 = scenario default
    double cfl_factor = 0.05;

    // potential { model = double-wall | uniform-mass | none }
    std::string potential_model = "double-wall";
    PotentialParams potential_params{};
    bool potential_hold = false;
    double uniform_mass = 0.0;

    // smearing { }
    SmearingParams smearing{0.1, 0.1};

    // state { kind = vacuum | wavepacket }
    std::string state_kind = "vacuum";
    double alpha = 1.0 / 11.0;
    double x0 = 5.0;
    int wavepacket_modes = 100;

    // region { }: energy bookkeeping region
    RegionSpec region{2.4, 7.6};

    // mode { }: quadrature probes on the cavity interior
    RegionSpec mode_region{3.0, 7.0};
    std::vector<int> mode_numbers{9};
    double window_crossings = 3.0;

    // output { }
    int energy_stride = 1;
    int nu_stride = 1;
    std::vector<double> t00_times;

    // sweep { }
    std::string sweep_param;
    std::vector<double> sweep_values;

    // convergence { }
    int conv_coarse_points = 101;
    double conv_x_prime = 3.0;
    double conv_t_prime = 1.0;
    double conv_t_max = 2.0;
    int conv_h = 2;
    bool conv_degrade = false;

    // stability { }
    int stability_n_theta = 1024;

    // evolution { }
    bool paper_literal_vprime = false;

    std::string raw_text;  // config echo for the manifest

    void validate() const;  // cross-field checks; throws ConfigError

    // Derived builders (all validated).
    SpatialGrid make_grid() const;
    TimeGrid make_time(const SpatialGrid& grid, double t_max_override = 0.0) const;
    Potential make_potential() const;
    double scenario_t_max() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

}  // namespace w2pt
