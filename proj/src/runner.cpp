#include "w2pt/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "w2pt/analysis.hpp"
#include "w2pt/errors.hpp"
#include "w2pt/transmission.hpp"

namespace w2pt {

namespace fs = std::filesystem;
using json = nlohmann::json;

static const char* kVersion = "w2pt 1.0.0";

uint64_t fnv1a64(const void* data, size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

/// Staged output directory: data lands in .part files, the manifest is
/// written before anything is finalized, and the .incomplete sentinel only
/// disappears once every file is in place.
class OutputStage {
public:
    explicit OutputStage(const fs::path& dir, const RunConfig& cfg) : dir_(dir), cfg_(cfg) {
        fs::create_directories(dir_);
        std::ofstream(dir_ / ".incomplete") << "run in progress\n";
        start_ = std::chrono::steady_clock::now();
    }

    void add_file(const std::string& name, std::string content) {
        files_.emplace_back(name, std::move(content));
    }

    void add_csv(const std::string& name, const std::string& header,
                 const std::vector<std::vector<double>>& rows) {
        std::string out = header + "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) out += ",";
                out += format_g17(row[i]);
            }
            out += "\n";
        }
        add_file(name, std::move(out));
    }

    void finalize(const std::string& note = "") {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json manifest;
        manifest["version"] = kVersion;
        manifest["scenario"] = to_string(cfg_.scenario);
        manifest["wall_clock_seconds"] = wall;
        if (!note.empty()) manifest["note"] = note;
        manifest["config"] = cfg_.raw_text;
        json outs = json::array();
        for (const auto& [name, content] : files_) {
            char hex[32];
            std::snprintf(hex, sizeof(hex), "%016llx",
                          static_cast<unsigned long long>(fnv1a64(content.data(), content.size())));
            outs.push_back({{"file", name}, {"bytes", content.size()}, {"fnv1a64", hex}});
        }
        manifest["outputs"] = outs;

        for (const auto& [name, content] : files_) {
            std::ofstream f(dir_ / (name + ".part"), std::ios::binary);
            f << content;
        }
        std::ofstream(dir_ / "manifest.json") << manifest.dump(2) << "\n";
        for (const auto& [name, content] : files_) {
            fs::rename(dir_ / (name + ".part"), dir_ / name);
        }
        fs::remove(dir_ / ".incomplete");
    }

    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    const RunConfig& cfg_;
    std::vector<std::pair<std::string, std::string>> files_;
    std::chrono::steady_clock::time_point start_;
};

fs::path resolve_output_dir(const RunConfig& cfg, const std::string& suffix = "") {
    fs::path dir;
    if (!cfg.output_dir.empty()) {
        dir = cfg.output_dir;
    } else {
        const char* root = std::getenv("W2PT_OUTPUT_ROOT");
        dir = fs::path(root ? root : "w2pt_out") / to_string(cfg.scenario);
    }
    if (!suffix.empty()) dir += suffix;
    return dir;
}

struct ScenarioSetup {
    SpatialGrid grid;
    Potential potential;
    std::shared_ptr<const InitialData> initial;
    std::unique_ptr<VacuumReference> reference;  // null for excitation-only runs
    std::vector<ModeProfile> profiles;
};

ScenarioSetup build_setup(const RunConfig& cfg) {
    ScenarioSetup s;
    s.grid = cfg.make_grid();
    s.potential = cfg.make_potential();
    if (cfg.state_kind == "vacuum") {
        const ModeBasis basis = ModeBasis::truncated(cfg.length, cfg.smearing, cfg.n_points - 1);
        s.initial = std::make_shared<InitialData>(vacuum_initial_data(basis, cfg.smearing, s.grid));
        s.reference = std::make_unique<VacuumReference>(basis, cfg.smearing, s.grid);
    } else {
        // Wavepacket scenarios evolve the state-dependent part of the
        // correlator alone; the vacuum background and its reference cancel
        // exactly by linearity, so no subtraction is applied downstream.
        const ModeBasis basis{cfg.length, cfg.wavepacket_modes};
        const WavepacketSpec spec = wavepacket_coefficients(basis, cfg.alpha, cfg.x0,
                                                            cfg.wavepacket_modes);
        s.initial = std::make_shared<InitialData>(
            excitation_initial_data(spec, basis, cfg.smearing, s.grid));
    }
    for (int n : cfg.mode_numbers) {
        s.profiles.push_back(ModeProfile::sine(n, cfg.mode_region, s.grid));
    }
    return s;
}

}  // namespace

ScenarioSeries march_scenario(const RunConfig& cfg, double t_max_override, bool track_energy,
                              bool track_modes) {
    ScenarioSetup setup = build_setup(cfg);

    EvolutionConfig evo;
    evo.spatial = setup.grid;
    evo.time = cfg.make_time(setup.grid, t_max_override);
    evo.potential = setup.potential;
    evo.initial = setup.initial;
    evo.paper_literal_vprime = cfg.paper_literal_vprime;

    ScenarioSeries series;
    series.dt = evo.time.dt;
    series.grid = setup.grid;

    std::unique_ptr<VacuumBands> bands;
    if (setup.reference) {
        bands = std::make_unique<VacuumBands>(make_vacuum_bands(*setup.reference, evo.time.dt));
    }
    const RegionSpec whole{0.0, cfg.length};
    std::vector<double> v_row(setup.grid.n_points);
    std::vector<bool> dumped(cfg.t00_times.size(), false);

    DiagonalMarcher marcher(evo);
    while (true) {
        const DiagonalRecord& rec = marcher.current();
        const int n = rec.n;
        if (track_energy && n % cfg.energy_stride == 0) {
            setup.potential.sample(setup.grid, rec.t, v_row);
            const std::vector<double> t00 = energy_density_banded(rec, bands.get(), v_row);
            EnergyRecord er;
            er.t = rec.t;
            er.total = region_energy(t00, whole, setup.grid);
            er.interior = region_energy(t00, cfg.region, setup.grid);
            er.exterior = er.total - er.interior;
            series.energies.push_back(er);
            for (size_t k = 0; k < cfg.t00_times.size(); ++k) {
                if (!dumped[k] && rec.t + 0.5 * rec.dt >= cfg.t00_times[k]) {
                    dumped[k] = true;
                    series.t00_dumps.emplace_back(rec.t, t00);
                }
            }
        }
        if (track_modes && n % cfg.nu_stride == 0) {
            for (const auto& prof : setup.profiles) {
                const auto m = quadrature_moments(rec, prof, setup.grid);
                const double nu = symplectic_eigenvalue(m.covariance());
                series.nu[prof.mode_number].emplace_back(rec.t, nu);
            }
        }
        if (!marcher.advance()) break;
    }
    return series;
}

namespace {

void write_series_outputs(OutputStage& stage, const RunConfig& cfg, const ScenarioSeries& series) {
    {
        std::vector<std::vector<double>> rows;
        for (const auto& e : series.energies) rows.push_back({e.t, e.interior, e.exterior, e.total});
        stage.add_csv("energy_by_region.csv", "t,interior,exterior,total", rows);
    }
    if (!series.nu.empty()) {
        std::string out = "t,nu,mode\n";
        for (const auto& [mode, pts] : series.nu) {
            for (const auto& [t, nu] : pts) {
                out += format_g17(t) + "," + format_g17(nu) + "," + std::to_string(mode) + "\n";
            }
        }
        stage.add_file("nu_series.csv", std::move(out));
    }
    if (!series.t00_dumps.empty()) {
        std::vector<std::vector<double>> rows;
        for (const auto& [t, t00] : series.t00_dumps) {
            for (int i = 0; i < series.grid.n_points; ++i) {
                rows.push_back({t, series.grid.x(i), t00[i]});
            }
        }
        stage.add_csv("energy_density.csv", "t,x,t00", rows);
    }
}

RunOutcome run_convergence(const RunConfig& cfg) {
    const SpatialGrid coarse = SpatialGrid::make(cfg.length, cfg.conv_coarse_points);
    const ModeBasis basis = ModeBasis::truncated(cfg.length, cfg.smearing, coarse.n_points - 1);

    RefinementSpec spec;
    spec.coarse_grid = coarse;
    spec.cfl_factor = cfg.cfl_factor;
    spec.t_max = cfg.conv_t_max;
    spec.potential = cfg.make_potential();
    spec.h = cfg.conv_h;
    spec.degrade_first_order = cfg.conv_degrade;
    const SmearingParams smearing = cfg.smearing;
    spec.initial_builder = [basis, smearing](const SpatialGrid& g) {
        return std::make_shared<InitialData>(vacuum_initial_data(basis, smearing, g));
    };

    const TripleSolutions sols = run_triple(spec, {cfg.conv_x_prime, cfg.conv_t_prime});
    const auto order = temporal_convergence_order(sols);
    const auto curves = spatial_convergence_curves(sols, cfg.conv_t_prime * 0.75, 2.0, cfg.conv_h);

    OutputStage stage(resolve_output_dir(cfg), cfg);
    {
        std::vector<std::vector<double>> rows;
        for (const auto& [t, p] : order) rows.push_back({t, p});
        stage.add_csv("convergence_temporal.csv", "t,p", rows);
    }
    {
        std::vector<std::vector<double>> rows;
        for (size_t i = 0; i < curves.abscissa.size(); ++i) {
            rows.push_back({curves.abscissa[i], curves.diff_cm_re[i], curves.diff_mf_scaled_re[i],
                            curves.diff_cm_im[i], curves.diff_mf_scaled_im[i]});
        }
        stage.add_csv("convergence_spatial.csv",
                      "x,diff_cm_re,diff_mf_scaled_re,diff_cm_im,diff_mf_scaled_im", rows);
    }
    double pmin = 1e300, pmax = -1e300;
    for (const auto& [t, p] : order) {
        pmin = std::min(pmin, p);
        pmax = std::max(pmax, p);
    }
    stage.finalize("p(t) in [" + format_g17(pmin) + ", " + format_g17(pmax) + "]");
    return {0, "convergence order p(t) in [" + format_g17(pmin) + ", " + format_g17(pmax) + "]"};
}

RunOutcome run_stability_scan(const RunConfig& cfg) {
    const SpatialGrid grid = cfg.make_grid();
    const TimeGrid time = cfg.make_time(grid);
    const double v_max = cfg.make_potential().max_value();
    const StabilityReport report = stability_scan(grid, time, v_max, cfg.stability_n_theta);

    OutputStage stage(resolve_output_dir(cfg), cfg);
    std::vector<std::vector<double>> rows;
    for (double theta : report.theta_samples) {
        auto [lp, lm] = amplification_factors(theta, time.dt, grid.spacing, v_max);
        rows.push_back({theta, std::max(std::abs(lp), std::abs(lm))});
    }
    stage.add_csv("stability_scan.csv", "theta,amplification", rows);
    stage.finalize(report.stable ? "stable" : "unstable");
    return {0, std::string("stability scan: ") + (report.stable ? "stable" : "unstable") +
                   ", max amplification " + format_g17(report.max_amplification)};
}

}  // namespace

RunOutcome run_scenario(const RunConfig& cfg) {
    switch (cfg.scenario) {
        case Scenario::convergence:
            return run_convergence(cfg);
        case Scenario::stability_scan:
            return run_stability_scan(cfg);
        case Scenario::purity_sweep:
        case Scenario::quality_sweep:
            if (cfg.sweep_param.empty() || cfg.sweep_values.empty()) {
                throw ConfigError(to_string(cfg.scenario) +
                                  " needs sweep parameter and values (config sweep{} or CLI)");
            }
            return run_sweep(cfg);
        default:
            break;
    }
    const ScenarioSeries series = march_scenario(cfg);
    OutputStage stage(resolve_output_dir(cfg), cfg);
    write_series_outputs(stage, cfg, series);
    stage.finalize();
    return {0, "run complete: " + stage.dir().string()};
}

RunOutcome run_sweep(const RunConfig& cfg, const std::string& param_override,
                     const std::vector<double>& values_override) {
    const std::string param = param_override.empty() ? cfg.sweep_param : param_override;
    std::vector<double> values = values_override.empty() ? cfg.sweep_values : values_override;
    if (param != "ramp_time" && param != "sharpness" && param != "wall_width" &&
        param != "mode_number") {
        throw ConfigError("unknown sweep parameter '" + param + "'");
    }
    if (values.empty()) throw ConfigError("sweep needs a nonempty value list");
    std::sort(values.begin(), values.end());

    OutputStage stage(resolve_output_dir(cfg, "_" + param), cfg);

    if (param == "ramp_time") {
        if (cfg.scenario != Scenario::purity_sweep) {
            throw ConfigError("ramp_time sweeps run under scenario purity-sweep");
        }
        const int mode = cfg.mode_numbers.front();
        const double l = cfg.mode_region.length();
        const double omega = mode * ModeBasis::kPi / l;
        const double window = cfg.window_crossings * l;
        std::vector<std::vector<double>> rows;
        for (double T : values) {
            RunConfig point = cfg;
            point.potential_params.ramp_time = T;
            point.mode_numbers = {mode};
            const double t_end = T + window + 0.5;
            const ScenarioSeries series = march_scenario(point, t_end, false, true);
            const PurityStats stats = purity_stats(series.nu.at(mode), window, T);
            rows.push_back({T, T * omega, stats.mean_nu, stats.std_nu, stats.p0});
        }
        stage.add_csv("purity_sweep.csv", "T,T_scaled,mean_nu,std_nu,p0", rows);
        stage.finalize();
        return {0, "purity sweep complete: " + stage.dir().string()};
    }

    if (param == "mode_number") {
        if (cfg.scenario != Scenario::purity_sweep) {
            throw ConfigError("mode_number sweeps run under scenario purity-sweep");
        }
        RunConfig point = cfg;
        point.mode_numbers.clear();
        for (double v : values) point.mode_numbers.push_back(static_cast<int>(std::lround(v)));
        const double T = cfg.potential_params.ramp_time;
        const double window = cfg.window_crossings * cfg.mode_region.length();
        const ScenarioSeries series = march_scenario(point, T + window + 0.5, false, true);
        std::vector<std::vector<double>> rows;
        for (int mode : point.mode_numbers) {
            const PurityStats stats = purity_stats(series.nu.at(mode), window, T);
            rows.push_back({static_cast<double>(mode), stats.mean_nu, stats.std_nu, stats.p0});
        }
        stage.add_csv("mode_sweep.csv", "mode,mean_nu,std_nu,p0", rows);
        stage.finalize();
        return {0, "mode sweep complete: " + stage.dir().string()};
    }

    // sharpness / wall_width: quality factor per value.
    if (cfg.scenario != Scenario::quality_sweep) {
        throw ConfigError("quality sweeps run under scenario quality-sweep");
    }
    std::vector<std::vector<double>> rows, rows_t;
    for (double v : values) {
        RunConfig point = cfg;
        if (param == "sharpness") {
            point.potential_params.sharpness = v;
        } else {
            point.potential_params.wall_width = v;
        }
        const double t_end = cfg.region.length() + 2.0 * point.make_grid().spacing * cfg.cfl_factor + 0.1;
        const ScenarioSeries series = march_scenario(point, t_end, true, false);
        const double q = quality_factor(series.energies, cfg.region);
        const ModeBasis basis{cfg.length, cfg.wavepacket_modes};
        const WavepacketSpec spec =
            wavepacket_coefficients(basis, cfg.alpha, cfg.x0, cfg.wavepacket_modes);
        const double qt = quality_from_transmissivity(spec, basis, point.potential_params, 1.0);
        rows.push_back({v, q});
        rows_t.push_back({v, qt});
    }
    stage.add_csv("quality_sweep.csv", "param,Q", rows);
    stage.add_csv("quality_transmission.csv", "param,Q", rows_t);
    stage.finalize();
    return {0, "quality sweep complete: " + stage.dir().string()};
}

RunOutcome check_config(const RunConfig& cfg) {
    // Parsing already validated everything; re-run the cross checks to be
    // explicit about what `check` certifies.
    cfg.validate();
    return {0, "config ok: scenario " + to_string(cfg.scenario)};
}

RunOutcome oracle_compare(const RunConfig& cfg) {
    ScenarioSetup setup = build_setup(cfg);
    EvolutionConfig evo;
    evo.spatial = setup.grid;
    evo.time = cfg.make_time(setup.grid);
    evo.potential = setup.potential;
    evo.initial = setup.initial;
    evo.paper_literal_vprime = cfg.paper_literal_vprime;

    const Wightman4D full = evolve_full_twopass(evo);
    double worst = 0.0;
    DiagonalMarcher marcher(evo);
    while (true) {
        const DiagonalRecord& rec = marcher.current();
        const int n = rec.n;
        worst = std::max(worst, max_abs_diff(*rec.w_nn, full.at(n, n)));
        worst = std::max(worst, max_abs_diff(*rec.w_n_np1, full.at(n, n + 1)));
        worst = std::max(worst, max_abs_diff(*rec.w_np1_n, full.at(n + 1, n)));
        worst = std::max(worst, max_abs_diff(*rec.w_np1_np1, full.at(n + 1, n + 1)));
        if (!marcher.advance()) break;
    }
    if (worst > 1e-12) {
        return {4, "engines disagree: max |diff| = " + format_g17(worst)};
    }
    return {0, "engines agree: max |diff| = " + format_g17(worst)};
}

}  // namespace w2pt
