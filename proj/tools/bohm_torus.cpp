// Command-line front end: solve surface states, integrate trajectories and
// run Lyapunov sweeps from config files or the shipped presets.

#include "bohm/config.hpp"
#include "bohm/experiments.hpp"
#include "bohm/parallel.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <utility>

int main(int argc, char** argv) {
    CLI::App app{"Bohmian trajectories on the torus and the flat strip"};
    app.set_version_flag("--version", std::string(BOHM_VERSION));
    app.require_subcommand(1);

    std::string preset;
    std::string config_file;
    std::string out_dir;
    unsigned jobs = bohm::default_jobs();
    std::optional<double> tol;
    bool print_config = false;

    const std::pair<const char*, const char*> commands[] = {
        {"states", "solve the surface eigenstates and write convergence reports"},
        {"trajectory", "integrate trajectories and write (theta, phi) series"},
        {"phasespace", "integrate trajectories and write (theta mod 2pi, theta_dot) series"},
        {"lyapunov", "monodromy sweep over theta0 with windowed exponents"}};
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        auto* p = sub->add_option("--preset", preset, "named preset from the presets directory");
        sub->add_option("--config", config_file, "config file")->excludes(p)->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (overrides [output] dir)");
        sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--tol", tol, "relative and absolute integrator tolerance")->check(CLI::Range(1e-16, 1e-2));
        sub->add_flag("--print-config", print_config, "print the canonical config and exit");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : bohm::exit_code::config;
    }

    const std::string command_name = app.get_subcommands().front()->get_name();
    bohm::ExperimentSpec spec;
    try {
        if (!preset.empty())
            spec = bohm::load_experiment(bohm::preset_path(preset));
        else if (!config_file.empty())
            spec = bohm::load_experiment(config_file);
        else if (command_name != "states")
            throw bohm::ConfigError(command_name + " needs --preset or --config");
    } catch (const bohm::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bohm::exit_code::config;
    }
    if (!out_dir.empty()) spec.output_dir = out_dir;
    if (tol) {
        spec.rel_tol = *tol;
        spec.abs_tol = *tol;
    }
    if (print_config) {
        std::cout << bohm::serialize(spec);
        return 0;
    }

    try {
        const auto outcome = bohm::run_command(bohm::parse_command(command_name), spec, jobs, std::cerr);
        if (!outcome.message.empty()) std::cerr << "error: " << outcome.message << "\n";
        for (const auto& path : outcome.outputs) std::cout << path.string() << "\n";
        std::cout << outcome.manifest.string() << "\n";
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bohm::exit_code::numerical;
    }
}
