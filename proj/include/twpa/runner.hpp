#pragma once

// Orchestration behind the CLI subcommands: resolve a RunConfig, drive the
// sweep/optimize engines, and write CSV/SVG/JSON artifacts. Kept out of
// main() so tests can exercise the exact CLI surface.

#include <string>

#include "twpa/config.hpp"

namespace twpa {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitInfeasibleCell = 3;
inline constexpr int kExitNoFeasiblePoint = 4;

struct RunOptions {
    std::string config_path;
    std::string out_dir;   // overrides [output] dir when non-empty
    int n_threads = 0;     // overrides config when > 0
    std::string formats;   // overrides [output] formats when non-empty
};

/// `twpa spectrum`: per-eta spectrum CSV/SVG for a fixed cell.
int run_spectrum(const RunOptions& options, std::string& diagnostics);

/// `twpa sweep`: 2D (C_c, C_r) metric maps.
int run_sweep(const RunOptions& options, std::string& diagnostics);

/// `twpa optimize`: report.json (+ front.csv when pareto requested).
int run_optimize(const RunOptions& options, std::string& diagnostics);

} // namespace twpa
