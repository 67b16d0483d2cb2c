#pragma once

// Run-configuration parsing for the CLI: a flat, sectioned key = value text
// format with unit-suffixed keys (ic_ua, cj_ff, cr_pf, ...) so magnitudes
// stay readable across the fF-to-pF parameter span. The grammar is
// documented in the README.

#include <optional>
#include <string>
#include <vector>

#include "twpa/optimize.hpp"

namespace twpa {

struct DeviceBlock {
    double ic_ua = 0.0;
    double cj_ff = 0.0;
    int n_jj = 0;
    double z0_ohm = 50.0;
};

struct PumpBlock {
    double ip_ua = 0.0;
    double fp_ghz = 0.0;
};

struct ResonatorBlock {
    double fr_ghz = 0.0;
    double cc_ff = 0.0;
    double cr_pf = 0.0;
};

struct SearchBlock {
    double fr_ghz = 0.0;
    double cc_min_ff = 0.0, cc_max_ff = 0.0;
    double cr_min_pf = 0.0, cr_max_pf = 0.0;
    int cc_points = 0, cr_points = 0;
};

struct LossBlock {
    std::vector<double> eta_values{1.0}; // single value or sweep list
};

struct GridBlock {
    double f_lo_ghz = 1.0;
    double f_hi_ghz = 11.0;
    int points = 2001;
    double exclusion_margin_mhz = 0.0;
};

struct MetricBlock {
    Metric2D::Kind kind = Metric2D::Kind::gain_at_frequency;
    double frequency_ghz = 5.0;
    double threshold_db = 16.0;
    double band_lo_ghz = 1.0;
    double band_hi_ghz = 11.0;
    Metric2D::Source bandwidth_source = Metric2D::Source::gain;
};

struct ObjectiveBlock {
    MetricBlock metric;
    bool pareto = false;
    std::optional<MetricBlock> pareto_second;
};

struct OutputBlock {
    std::string dir = ".";
    bool csv = true;
    bool svg = true;
};

struct RunConfig {
    DeviceBlock device;
    PumpBlock pump;
    std::optional<ResonatorBlock> resonator;
    std::optional<SearchBlock> search;
    LossBlock loss;
    GridBlock grid;
    std::vector<MetricBlock> sweep_metrics; // [sweep] metrics list
    std::optional<ObjectiveBlock> objective;
    OutputBlock output;
    int n_threads = 1;
};

/// Parses and validates config text. Throws ConfigError with line/field
/// diagnostics on malformed input or invariant violations.
RunConfig parse_config(const std::string& text);

/// Reads the file and parses it.
RunConfig load_config(const std::string& path);

/// Fully-resolved config (defaults applied) as "[section] key = value"
/// lines, embedded into every output artifact for reproducibility.
std::vector<std::string> echo_config(const RunConfig& config);

// SI accessors for the unit-suffixed fields.
DeviceParams resolve_device(const RunConfig& config);
PumpConfig resolve_pump(const RunConfig& config, const DeviceParams& device);
FrequencyGrid resolve_grid(const RunConfig& config);
Metric2D resolve_metric(const MetricBlock& block);

} // namespace twpa
