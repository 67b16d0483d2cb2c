#include "twpa/optimize.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace twpa {

namespace {

// refinement works in fabrication units so the termination box is square
constexpr double kCcUnit = 1e-15; // fF
constexpr double kCrUnit = 1e-12; // pF
constexpr double kDiameterTolCc = 0.1; // fF
constexpr double kDiameterTolCr = 0.1; // pF
constexpr int kMaxRefineEvals = 200;

struct Candidate {
    double cc = 0.0;
    double cr = 0.0;
    double value = -std::numeric_limits<double>::infinity();
    bool feasible = false;
};

/// Ties break toward smaller C_c, then smaller C_r.
bool better(const Candidate& a, const Candidate& b) {
    if (!a.feasible) return false;
    if (!b.feasible) return true;
    if (a.value != b.value) return a.value > b.value;
    if (a.cc != b.cc) return a.cc < b.cc;
    return a.cr < b.cr;
}

std::optional<double> try_objective(const DeviceParams& device, const PumpConfig& pump,
                                    const Objective& objective, double cc, double cr) {
    try {
        return evaluate_objective(device, pump, objective, cc, cr);
    } catch (const InvalidCell&) {
        return std::nullopt;
    }
}

} // namespace

SearchSpace make_search_space(const DeviceParams& device, double cc_lo, double cc_hi,
                              double cr_lo, double cr_hi, int n_cc, int n_cr) {
    if (!(cc_lo > 0.0) || !(cr_lo > 0.0)) throw NonPositiveInput("search space lower bound");
    if (!(cc_lo < cc_hi) || !(cr_lo < cr_hi)) {
        throw Error("search space bounds must satisfy lower < upper");
    }
    if (n_cc < 1 || n_cr < 1) throw NonPositiveInput("coarse grid resolution");

    const double c_eff = device.josephson_inductance /
                         (device.line_impedance * device.line_impedance);
    if (cc_lo > c_eff) {
        throw NoFeasiblePoint("entire C_c range exceeds C_eff: no valid cell exists");
    }
    SearchSpace space{cc_lo, std::min(cc_hi, c_eff), cr_lo, cr_hi, n_cc, n_cr};
    return space;
}

double evaluate_objective(const DeviceParams& device, const PumpConfig& pump,
                          const Objective& objective, double cc, double cr) {
    ResonatorParams res;
    try {
        res = solve_constraints(device, objective.target_resonance, cc, cr);
    } catch (const Error& e) {
        throw InvalidCell(std::string("cell rejected by the constraint solver: ") + e.what());
    }

    const Metric2D& metric = objective.metric;
    if (metric.kind == Metric2D::Kind::bandwidth_above_threshold) {
        const SpectrumResult spec = spectrum(device, res, pump, objective.loss, objective.grid, 1);
        return metric.bandwidth_source == Metric2D::Source::gain
                   ? gain_bandwidth_above(spec, metric.threshold_db, metric.band_lo, metric.band_hi)
                   : squeeze_bandwidth_above(spec, metric.threshold_db, metric.band_lo,
                                             metric.band_hi);
    }

    const DispersionContext ctx = make_context(device, res);
    ModeCoefficients coeffs;
    try {
        coeffs = coefficients(ctx, pump, 2.0 * std::numbers::pi * metric.frequency,
                              device.n_cells);
    } catch (const Error& e) {
        throw InvalidCell(std::string("metric frequency not evaluable at this cell: ") + e.what());
    }
    if (metric.kind == Metric2D::Kind::gain_at_frequency) {
        return lossy_gain_db(coeffs, objective.loss);
    }
    return -10.0 * std::log10(squeezing_extrema(coeffs, objective.loss).s_min);
}

OptimizationReport optimize_function(const ObjectiveFn& objective, const SearchSpace& space,
                                     int n_threads) {
    const std::vector<double> cc_grid = linspace(space.cc_lo, space.cc_hi, space.n_cc);
    const std::vector<double> cr_grid = linspace(space.cr_lo, space.cr_hi, space.n_cr);

    // coarse stage: values land in slots by index, reduction is serial
    const int n_total = space.n_cc * space.n_cr;
    std::vector<std::optional<double>> values(n_total);
    {
        std::atomic<int> cursor{0};
        auto work = [&](int idx) {
            const double cc = cc_grid[idx % space.n_cc];
            const double cr = cr_grid[idx / space.n_cc];
            values[idx] = objective(cc, cr);
        };
        if (n_threads <= 1) {
            for (int i = 0; i < n_total; ++i) work(i);
        } else {
            std::vector<std::thread> pool;
            const int workers = std::min(n_threads, n_total);
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (;;) {
                        const int i = cursor.fetch_add(1);
                        if (i >= n_total) return;
                        work(i);
                    }
                });
            }
            for (auto& t : pool) t.join();
        }
    }

    OptimizationReport report;
    Candidate best;
    for (int idx = 0; idx < n_total; ++idx) {
        const double cc = cc_grid[idx % space.n_cc];
        const double cr = cr_grid[idx / space.n_cc];
        report.trace.push_back(TracePoint{cc, cr, values[idx]});
        Candidate cand{cc, cr, values[idx].value_or(0.0), values[idx].has_value()};
        if (better(cand, best)) best = cand;
    }
    if (!best.feasible) {
        throw NoFeasiblePoint("every coarse grid cell is infeasible");
    }

    // refinement: bounded Nelder-Mead in (fF, pF) units from the best cell
    using Point = std::array<double, 2>;
    const Point lo{space.cc_lo / kCcUnit, space.cr_lo / kCrUnit};
    const Point hi{space.cc_hi / kCcUnit, space.cr_hi / kCrUnit};
    auto clip = [&](Point p) {
        p[0] = std::clamp(p[0], lo[0], hi[0]);
        p[1] = std::clamp(p[1], lo[1], hi[1]);
        return p;
    };

    int refine_evals = 0;
    auto eval = [&](const Point& p) {
        ++refine_evals;
        const double cc = p[0] * kCcUnit;
        const double cr = p[1] * kCrUnit;
        const std::optional<double> value = objective(cc, cr);
        report.trace.push_back(TracePoint{cc, cr, value});
        Candidate cand{cc, cr, value.value_or(0.0), value.has_value()};
        if (better(cand, best)) best = cand;
        return value ? -*value : std::numeric_limits<double>::infinity(); // minimize
    };

    const double step_cc = space.n_cc > 1
                               ? (hi[0] - lo[0]) / (space.n_cc - 1)
                               : std::max(0.05 * (hi[0] - lo[0]), 10.0 * kDiameterTolCc);
    const double step_cr = space.n_cr > 1
                               ? (hi[1] - lo[1]) / (space.n_cr - 1)
                               : std::max(0.05 * (hi[1] - lo[1]), 10.0 * kDiameterTolCr);

    Point p0{best.cc / kCcUnit, best.cr / kCrUnit};
    Point p1 = clip({p0[0] + (p0[0] + step_cc <= hi[0] ? step_cc : -step_cc), p0[1]});
    Point p2 = clip({p0[0], p0[1] + (p0[1] + step_cr <= hi[1] ? step_cr : -step_cr)});

    std::array<Point, 3> simplex{p0, p1, p2};
    std::array<double, 3> cost{eval(simplex[0]), eval(simplex[1]), eval(simplex[2])};

    auto order = [&] {
        // stable selection sort keeps tie handling deterministic
        for (int i = 0; i < 2; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                if (cost[j] < cost[i]) {
                    std::swap(cost[i], cost[j]);
                    std::swap(simplex[i], simplex[j]);
                }
            }
        }
    };
    auto diameter_small = [&] {
        double span_cc = 0.0, span_cr = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                span_cc = std::max(span_cc, std::abs(simplex[i][0] - simplex[j][0]));
                span_cr = std::max(span_cr, std::abs(simplex[i][1] - simplex[j][1]));
            }
        }
        return span_cc < kDiameterTolCc && span_cr < kDiameterTolCr;
    };

    while (refine_evals < kMaxRefineEvals) {
        order();
        if (diameter_small()) break;

        const Point centroid{(simplex[0][0] + simplex[1][0]) / 2.0,
                             (simplex[0][1] + simplex[1][1]) / 2.0};
        auto along = [&](double t) {
            return clip(Point{centroid[0] + t * (simplex[2][0] - centroid[0]),
                              centroid[1] + t * (simplex[2][1] - centroid[1])});
        };

        const Point reflected = along(-1.0);
        const double reflected_cost = eval(reflected);
        if (reflected_cost < cost[0]) {
            const Point expanded = along(-2.0);
            if (refine_evals >= kMaxRefineEvals) break;
            const double expanded_cost = eval(expanded);
            if (expanded_cost < reflected_cost) {
                simplex[2] = expanded;
                cost[2] = expanded_cost;
            } else {
                simplex[2] = reflected;
                cost[2] = reflected_cost;
            }
            continue;
        }
        if (reflected_cost < cost[1]) {
            simplex[2] = reflected;
            cost[2] = reflected_cost;
            continue;
        }
        const Point contracted = along(0.5);
        if (refine_evals >= kMaxRefineEvals) break;
        const double contracted_cost = eval(contracted);
        if (contracted_cost < cost[2]) {
            simplex[2] = contracted;
            cost[2] = contracted_cost;
            continue;
        }
        // shrink toward the best vertex
        for (int i = 1; i < 3; ++i) {
            simplex[i] = clip(Point{(simplex[0][0] + simplex[i][0]) / 2.0,
                                    (simplex[0][1] + simplex[i][1]) / 2.0});
            if (refine_evals >= kMaxRefineEvals) break;
            cost[i] = eval(simplex[i]);
        }
    }

    report.best_cc = best.cc;
    report.best_cr = best.cr;
    report.best_value = best.value;
    report.n_evaluations = static_cast<int>(report.trace.size());
    return report;
}

OptimizationReport optimize(const DeviceParams& device, const PumpConfig& pump,
                            const Objective& objective, const SearchSpace& space,
                            int n_threads) {
    OptimizationReport report = optimize_function(
        [&](double cc, double cr) { return try_objective(device, pump, objective, cc, cr); },
        space, n_threads);
    report.derived_cell =
        solve_constraints(device, objective.target_resonance, report.best_cc, report.best_cr);
    return report;
}

std::vector<ParetoPoint> pareto_scan(const DeviceParams& device, const PumpConfig& pump,
                                     const Objective& first, const Objective& second,
                                     const SearchSpace& space, int n_threads) {
    const std::vector<double> cc_grid = linspace(space.cc_lo, space.cc_hi, space.n_cc);
    const std::vector<double> cr_grid = linspace(space.cr_lo, space.cr_hi, space.n_cr);

    struct Eval {
        double cc, cr;
        std::optional<double> v1, v2;
    };
    const int n_total = space.n_cc * space.n_cr;
    std::vector<Eval> evals(n_total);

    std::atomic<int> cursor{0};
    auto work = [&](int idx) {
        Eval& e = evals[idx];
        e.cc = cc_grid[idx % space.n_cc];
        e.cr = cr_grid[idx / space.n_cc];
        e.v1 = try_objective(device, pump, first, e.cc, e.cr);
        e.v2 = e.v1 ? try_objective(device, pump, second, e.cc, e.cr) : std::nullopt;
    };
    if (n_threads <= 1) {
        for (int i = 0; i < n_total; ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        const int workers = std::min(n_threads, n_total);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const int i = cursor.fetch_add(1);
                    if (i >= n_total) return;
                    work(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    std::vector<ParetoPoint> front;
    bool any_feasible = false;
    for (int a = 0; a < n_total; ++a) {
        const Eval& ea = evals[a];
        if (!ea.v1 || !ea.v2) continue;
        any_feasible = true;
        bool dominated = false;
        for (int b = 0; b < n_total && !dominated; ++b) {
            if (a == b) continue;
            const Eval& eb = evals[b];
            if (!eb.v1 || !eb.v2) continue;
            dominated = *eb.v1 >= *ea.v1 && *eb.v2 >= *ea.v2 &&
                        (*eb.v1 > *ea.v1 || *eb.v2 > *ea.v2);
        }
        if (!dominated) front.push_back(ParetoPoint{ea.cc, ea.cr, *ea.v1, *ea.v2});
    }
    if (!any_feasible) {
        throw NoFeasiblePoint("every coarse grid cell is infeasible");
    }
    return front;
}

} // namespace twpa
