#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "w2pt/config.hpp"
#include "w2pt/errors.hpp"
#include "w2pt/runner.hpp"

namespace {

int dispatch(const std::function<w2pt::RunOutcome()>& f) {
    try {
        const w2pt::RunOutcome out = f();
        std::puts(out.message.c_str());
        return out.exit_code;
    } catch (const w2pt::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const w2pt::MemoryBudgetError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const w2pt::CflError& e) {
        std::fprintf(stderr, "stability error: %s\n", e.what());
        return 3;
    } catch (const w2pt::ConsistencyError& e) {
        std::fprintf(stderr, "numerical consistency error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-point correlator evolution for a scalar field in a growing cavity"};
    app.require_subcommand(1);

    std::string config_path;
    std::string sweep_param;
    std::vector<double> sweep_values;

    auto* run_cmd = app.add_subcommand("run", "run a scenario from a config file");
    run_cmd->add_option("config", config_path, "config file")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    sweep_cmd->add_option("config", config_path, "config file")->required();
    sweep_cmd->add_option("--param", sweep_param, "ramp_time | sharpness | wall_width | mode_number");
    sweep_cmd->add_option("--values", sweep_values, "sweep values")->delimiter(',');

    auto* check_cmd = app.add_subcommand("check", "validate a config and exit");
    check_cmd->add_option("config", config_path, "config file")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "compare the band engine with the two-pass sweep");
    oracle_cmd->add_option("config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        return dispatch([&] { return w2pt::run_scenario(w2pt::load_config_file(config_path)); });
    }
    if (sweep_cmd->parsed()) {
        return dispatch([&] {
            return w2pt::run_sweep(w2pt::load_config_file(config_path), sweep_param, sweep_values);
        });
    }
    if (check_cmd->parsed()) {
        return dispatch([&] { return w2pt::check_config(w2pt::load_config_file(config_path)); });
    }
    return dispatch([&] { return w2pt::oracle_compare(w2pt::load_config_file(config_path)); });
}
