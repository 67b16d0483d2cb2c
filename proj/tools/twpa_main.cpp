// twpa: spectra, parameter sweeps, and resonator optimization for resonant
// phase-matched Josephson traveling-wave parametric amplifiers.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twpa/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"RPM JTWPA gain/squeezing simulation and resonator design toolkit"};
    app.require_subcommand(1);

    twpa::RunOptions options;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", options.config_path, "run configuration file")
            ->required();
        cmd->add_option("--out", options.out_dir, "output directory (overrides [output] dir)");
        cmd->add_option("--threads", options.n_threads,
                        "worker threads (default: TWPA_THREADS or 1)");
        cmd->add_option("--format", options.formats, "comma list of csv,svg");
    };

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "gain/squeezing spectrum of one resonator cell");
    CLI::App* sweep = app.add_subcommand(
        "sweep", "2D (C_c, C_r) metric maps over the search space");
    CLI::App* optimize = app.add_subcommand(
        "optimize", "search the resonator space for the best metric value");
    add_common(spectrum);
    add_common(sweep);
    add_common(optimize);

    CLI11_PARSE(app, argc, argv);

    std::string diagnostics;
    int code = 1;
    if (spectrum->parsed()) code = twpa::run_spectrum(options, diagnostics);
    if (sweep->parsed()) code = twpa::run_sweep(options, diagnostics);
    if (optimize->parsed()) code = twpa::run_optimize(options, diagnostics);

    if (code != twpa::kExitOk) {
        std::cerr << "twpa: " << diagnostics << "\n";
    }
    return code;
}
