#pragma once

// Search over the two resonator degrees of freedom (C_c, C_r) under the
// fixed (Z_0, f_r) constraints: a coarse grid scan followed by bounded
// Nelder-Mead refinement from the best grid cell. The objective landscape
// has infeasible regions and a stopband notch, so no gradients are used.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twpa/sweep.hpp"

namespace twpa {

/// Scalar objective, maximized. Point metrics are evaluated at `frequency`;
/// the bandwidth metric integrates the chosen spectrum above threshold_db
/// inside [band_lo, band_hi] on `grid`.
struct Objective {
    Metric2D metric;
    LossModel loss;
    double target_resonance = 0.0; // rad/s
    FrequencyGrid grid;            // bandwidth metric only
};

/// Rectangular (C_c, C_r) bounds with the coarse scan resolution. The upper
/// C_c bound is clamped to C_eff at construction; bounds must be positive
/// and ordered.
struct SearchSpace {
    double cc_lo = 0.0, cc_hi = 0.0; // F
    double cr_lo = 0.0, cr_hi = 0.0; // F
    int n_cc = 0, n_cr = 0;
};

SearchSpace make_search_space(const DeviceParams& device, double cc_lo, double cc_hi,
                              double cr_lo, double cr_hi, int n_cc, int n_cr);

struct TracePoint {
    double cc = 0.0; // F
    double cr = 0.0; // F
    std::optional<double> value; // nullopt for infeasible evaluations
};

struct OptimizationReport {
    double best_cc = 0.0;
    double best_cr = 0.0;
    double best_value = 0.0;
    ResonatorParams derived_cell;
    std::vector<TracePoint> trace;
    int n_evaluations = 0;
};

/// Objective value at one feasible (cc, cr) point. Throws InvalidCell when
/// the constraint solver rejects the point or the metric frequency cannot
/// be evaluated there.
double evaluate_objective(const DeviceParams& device, const PumpConfig& pump,
                          const Objective& objective, double cc, double cr);

/// Maximized callable over (cc, cr) in farads; nullopt marks an infeasible
/// evaluation. Must be pure: the coarse stage may call it concurrently.
using ObjectiveFn = std::function<std::optional<double>(double cc, double cr)>;

/// Search core: coarse scan plus simplex refinement clipped to bounds.
/// Deterministic: identical inputs produce identical reports, trace order
/// included. Ties break toward smaller C_c, then smaller C_r. Throws
/// NoFeasiblePoint when every grid cell is infeasible. The derived_cell
/// field is left empty (no device in scope here).
OptimizationReport optimize_function(const ObjectiveFn& objective, const SearchSpace& space,
                                     int n_threads = 1);

/// optimize_function over evaluate_objective, with derived_cell populated.
OptimizationReport optimize(const DeviceParams& device, const PumpConfig& pump,
                            const Objective& objective, const SearchSpace& space,
                            int n_threads = 1);

struct ParetoPoint {
    double cc = 0.0;
    double cr = 0.0;
    double value1 = 0.0;
    double value2 = 0.0;
};

/// Non-dominated subset of the coarse grid under joint maximization of two
/// objectives, in row-major grid order.
std::vector<ParetoPoint> pareto_scan(const DeviceParams& device, const PumpConfig& pump,
                                     const Objective& first, const Objective& second,
                                     const SearchSpace& space, int n_threads = 1);

} // namespace twpa
