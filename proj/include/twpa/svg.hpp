#pragma once

// Self-contained SVG plot emission: line plots for spectra and colormapped
// heatmaps for 2D sweeps. Rendering is pure string assembly from the same
// in-memory arrays the CSV writers use, with deterministic formatting.

#include <optional>
#include <string>
#include <vector>

#include "twpa/sweep.hpp"

namespace twpa {

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y; // NaN entries break the polyline (flagged points)
};

struct SvgLinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
};

std::string render_line_plot(const SvgLinePlot& plot,
                             const std::vector<std::string>& config_echo);

struct SvgHeatmap {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> x_values;
    std::vector<double> y_values;
    std::vector<std::vector<std::optional<double>>> field; // [y][x]
    std::string value_label;
};

std::string render_heatmap(const SvgHeatmap& map,
                           const std::vector<std::string>& config_echo);

} // namespace twpa
