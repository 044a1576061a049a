#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "w2pt/config.hpp"
#include "w2pt/observables.hpp"

namespace w2pt {

struct RunOutcome {
    int exit_code = 0;
    std::string message;
};

/// Time series of every observable a scenario march produces.
struct ScenarioSeries {
    std::vector<EnergyRecord> energies;
    std::map<int, std::vector<std::pair<double, double>>> nu;  // mode -> (t, nu)
    std::vector<std::pair<double, std::vector<double>>> t00_dumps;
    double dt = 0.0;
    SpatialGrid grid;
};

/// Build initial data, reference, and probes from the config and march the
/// diagonal engine over [0, t_max], collecting observables. Used by `run`,
/// the sweep drivers, and the acceptance suite.
ScenarioSeries march_scenario(const RunConfig& cfg, double t_max_override = 0.0,
                              bool track_energy = true, bool track_modes = true);

RunOutcome run_scenario(const RunConfig& cfg);
RunOutcome run_sweep(const RunConfig& cfg, const std::string& param_override = "",
                     const std::vector<double>& values_override = {});
RunOutcome check_config(const RunConfig& cfg);

/// Diagonal-band engine against the literal two-pass sweep on the config's
/// grid; exit 4 when they disagree beyond 1e-12 per entry.
RunOutcome oracle_compare(const RunConfig& cfg);

uint64_t fnv1a64(const void* data, size_t len);
std::string format_g17(double v);

}  // namespace w2pt
