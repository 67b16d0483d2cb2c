#include "twpa/runner.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "twpa/csv.hpp"
#include "twpa/svg.hpp"

namespace twpa {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

const char* kPalette[] = {"#c9a227", "#1f4e79", "#9c2b2b", "#2e7d32",
                          "#6a3d9a", "#e07b39", "#3c8ea7", "#555555"};

int resolve_threads(const RunOptions& options) {
    if (options.n_threads > 0) return options.n_threads;
    if (const char* env = std::getenv("TWPA_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

/// Delivery options resolved from the CLI flags. Kept out of RunConfig so
/// the echoed configuration, and with it every output byte, depends only on
/// the config file.
struct Delivery {
    fs::path dir;
    bool csv = true;
    bool svg = true;
};

RunConfig prepare(const RunOptions& options) {
    RunConfig config = load_config(options.config_path);
    config.n_threads = resolve_threads(options);
    return config;
}

Delivery resolve_delivery(const RunOptions& options, const RunConfig& config) {
    Delivery d;
    d.dir = options.out_dir.empty() ? config.output.dir : options.out_dir;
    d.csv = config.output.csv;
    d.svg = config.output.svg;
    if (!options.formats.empty()) {
        d.csv = options.formats.find("csv") != std::string::npos;
        d.svg = options.formats.find("svg") != std::string::npos;
        if (!d.csv && !d.svg) {
            throw ConfigError("--format must include csv and/or svg");
        }
    }
    return d;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write output file '" + path.string() + "'");
    out << content;
}

std::string eta_suffix(double eta) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", eta);
    return buf;
}

std::vector<double> scaled(const std::vector<double>& values, double factor) {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] * factor;
    return out;
}

std::vector<double> abs_squeeze_column(const SpectrumResult& spec) {
    std::vector<double> out(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) out[i] = -spec.squeeze_min_db[i];
    return out;
}

SvgLinePlot spectrum_plot(const std::vector<SpectrumResult>& spectra,
                          const std::vector<double>& etas) {
    SvgLinePlot plot;
    plot.title = "Gain and quadrature squeezing vs signal frequency";
    plot.x_label = "signal frequency (GHz)";
    plot.y_label = "dB";
    int color = 0;
    for (std::size_t s = 0; s < spectra.size(); ++s) {
        const std::string suffix = " (eta=" + eta_suffix(etas[s]) + ")";
        SvgSeries gain;
        gain.label = "gain" + suffix;
        gain.color = kPalette[color++ % 8];
        gain.x = scaled(spectra[s].frequencies, 1e-9);
        gain.y = spectra[s].lossy_gain_db;
        plot.series.push_back(std::move(gain));

        SvgSeries squeeze;
        squeeze.label = "|squeezing|" + suffix;
        squeeze.color = kPalette[color++ % 8];
        squeeze.x = scaled(spectra[s].frequencies, 1e-9);
        squeeze.y = abs_squeeze_column(spectra[s]);
        plot.series.push_back(std::move(squeeze));
    }
    return plot;
}

int classify(const Error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return kExitConfigError;
    if (dynamic_cast<const NoFeasiblePoint*>(&e)) return kExitNoFeasiblePoint;
    if (dynamic_cast<const InvalidCell*>(&e) || dynamic_cast<const NegativeCapacitance*>(&e) ||
        dynamic_cast<const ZeroDenominator*>(&e) || dynamic_cast<const NonPositiveInput*>(&e)) {
        return kExitInfeasibleCell;
    }
    return 1;
}

} // namespace

int run_spectrum(const RunOptions& options, std::string& diagnostics) {
    try {
        const RunConfig config = prepare(options);
        if (!config.resonator) {
            throw ConfigError("the spectrum command requires a [resonator] section");
        }
        const DeviceParams device = resolve_device(config);
        const PumpConfig pump = resolve_pump(config, device);
        const FrequencyGrid grid = resolve_grid(config);
        const ResonatorParams res =
            solve_constraints(device, 2.0 * std::numbers::pi * config.resonator->fr_ghz * 1e9,
                              config.resonator->cc_ff * 1e-15, config.resonator->cr_pf * 1e-12);

        const std::vector<SpectrumResult> spectra =
            loss_sweep(device, res, pump, config.loss.eta_values, grid, config.n_threads);
        const std::vector<std::string> echo = echo_config(config);
        const Delivery out = resolve_delivery(options, config);

        if (out.csv) {
            if (spectra.size() == 1) {
                write_file(out.dir / "spectrum.csv", spectrum_csv(spectra[0], echo));
            } else {
                for (std::size_t i = 0; i < spectra.size(); ++i) {
                    write_file(out.dir / ("spectrum_eta" +
                                          eta_suffix(config.loss.eta_values[i]) + ".csv"),
                               spectrum_csv(spectra[i], echo));
                }
            }
        }
        if (out.svg) {
            write_file(out.dir / "spectrum.svg",
                       render_line_plot(spectrum_plot(spectra, config.loss.eta_values), echo));
        }
        return kExitOk;
    } catch (const Error& e) {
        diagnostics = e.what();
        return classify(e);
    } catch (const std::exception& e) {
        diagnostics = e.what();
        return 1;
    }
}

int run_sweep(const RunOptions& options, std::string& diagnostics) {
    try {
        const RunConfig config = prepare(options);
        if (!config.search) {
            throw ConfigError("the sweep command requires a [search] section");
        }
        const DeviceParams device = resolve_device(config);
        const PumpConfig pump = resolve_pump(config, device);
        const FrequencyGrid grid = resolve_grid(config);
        const SearchBlock& search = *config.search;
        const double target_resonance = 2.0 * std::numbers::pi * search.fr_ghz * 1e9;
        const LossModel loss = make_loss(config.loss.eta_values.front());

        std::vector<MetricBlock> metrics = config.sweep_metrics;
        if (metrics.empty()) {
            MetricBlock gain;
            gain.band_lo_ghz = config.grid.f_lo_ghz;
            gain.band_hi_ghz = config.grid.f_hi_ghz;
            MetricBlock squeeze = gain;
            squeeze.kind = Metric2D::Kind::abs_squeezing_at_frequency;
            metrics = {gain, squeeze};
        }

        const std::vector<double> cc_values =
            linspace(search.cc_min_ff * 1e-15, search.cc_max_ff * 1e-15, search.cc_points);
        const std::vector<double> cr_values =
            linspace(search.cr_min_pf * 1e-12, search.cr_max_pf * 1e-12, search.cr_points);
        const std::vector<std::string> echo = echo_config(config);
        const Delivery out = resolve_delivery(options, config);

        for (const MetricBlock& block : metrics) {
            const Metric2D metric = resolve_metric(block);
            const SweepGrid2D result =
                sweep_2d(device, pump, loss, target_resonance, cc_values, cr_values, metric,
                         grid, config.n_threads);
            if (out.csv) {
                write_file(out.dir / ("sweep2d_" + result.metric_name + ".csv"),
                           sweep2d_csv(result, echo));
            }
            if (out.svg) {
                SvgHeatmap map;
                map.title = result.metric_name + " over the (C_c, C_r) plane";
                map.x_label = "C_c (fF)";
                map.y_label = "C_r (pF)";
                map.x_values = scaled(result.cc_values, 1e15);
                map.y_values = scaled(result.cr_values, 1e12);
                map.field = result.field;
                map.value_label = metric.kind == Metric2D::Kind::bandwidth_above_threshold
                                      ? "Hz"
                                      : "dB";
                write_file(out.dir / ("sweep2d_" + result.metric_name + ".svg"),
                           render_heatmap(map, echo));
            }
        }
        return kExitOk;
    } catch (const Error& e) {
        diagnostics = e.what();
        return classify(e);
    } catch (const std::exception& e) {
        diagnostics = e.what();
        return 1;
    }
}

int run_optimize(const RunOptions& options, std::string& diagnostics) {
    try {
        const RunConfig config = prepare(options);
        if (!config.search) {
            throw ConfigError("the optimize command requires a [search] section");
        }
        if (!config.objective) {
            throw ConfigError("the optimize command requires an [objective] section");
        }
        const DeviceParams device = resolve_device(config);
        const PumpConfig pump = resolve_pump(config, device);
        const SearchBlock& search = *config.search;

        Objective objective;
        objective.metric = resolve_metric(config.objective->metric);
        objective.loss = make_loss(config.loss.eta_values.front());
        objective.target_resonance = 2.0 * std::numbers::pi * search.fr_ghz * 1e9;
        objective.grid = resolve_grid(config);

        const SearchSpace space = make_search_space(
            device, search.cc_min_ff * 1e-15, search.cc_max_ff * 1e-15,
            search.cr_min_pf * 1e-12, search.cr_max_pf * 1e-12, search.cc_points,
            search.cr_points);

        const OptimizationReport report =
            optimize(device, pump, objective, space, config.n_threads);

        const std::vector<std::string> echo = echo_config(config);
        ordered_json doc;
        doc["command"] = "optimize";
        doc["config"] = echo;
        doc["objective"] = objective.metric.name();
        doc["best"] = {{"cc_f", report.best_cc},
                       {"cr_f", report.best_cr},
                       {"value", report.best_value}};
        doc["derived_cell"] = {{"c0_f", report.derived_cell.c_ground},
                               {"cc_f", report.derived_cell.c_coupling},
                               {"cr_f", report.derived_cell.c_resonator},
                               {"lr_h", report.derived_cell.l_resonator},
                               {"fr_hz", report.derived_cell.resonance_frequency /
                                             (2.0 * std::numbers::pi)}};
        doc["n_evaluations"] = report.n_evaluations;
        ordered_json trace = ordered_json::array();
        for (const TracePoint& p : report.trace) {
            ordered_json entry;
            entry["cc_f"] = p.cc;
            entry["cr_f"] = p.cr;
            if (p.value) entry["value"] = *p.value;
            else entry["value"] = nullptr;
            trace.push_back(entry);
        }
        doc["trace"] = std::move(trace);

        const Delivery out = resolve_delivery(options, config);
        write_file(out.dir / "report.json", doc.dump(2) + "\n");

        if (config.objective->pareto) {
            Objective second = objective;
            second.metric = resolve_metric(*config.objective->pareto_second);
            const std::vector<ParetoPoint> front =
                pareto_scan(device, pump, objective, second, space, config.n_threads);
            write_file(out.dir / "front.csv",
                       pareto_csv(front, objective.metric.name(), second.metric.name(), echo));
        }
        return kExitOk;
    } catch (const Error& e) {
        diagnostics = e.what();
        return classify(e);
    } catch (const std::exception& e) {
        diagnostics = e.what();
        return 1;
    }
}

} // namespace twpa
