#include "twpa/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

namespace twpa {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Index-addressed parallel loop. Each index writes only its own slot, so
/// results are independent of scheduling and thread count.
template <typename Fn>
void parallel_for(int n, int n_threads, Fn&& fn) {
    if (n_threads <= 1 || n < 2) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    const int workers = std::min(n_threads, n);
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void validate_cell(const ResonatorParams& res) {
    const bool finite = std::isfinite(res.c_ground) && std::isfinite(res.c_coupling) &&
                        std::isfinite(res.c_resonator) && std::isfinite(res.l_resonator);
    if (!finite || res.c_ground < 0.0 || res.c_coupling < 0.0 || res.c_resonator < 0.0 ||
        !(res.l_resonator > 0.0) || !(res.resonance_frequency > 0.0)) {
        throw InvalidCell("resonator element values violate the cell constraints");
    }
}

} // namespace

FrequencyGrid make_grid(double start, double stop, int n_points, double exclusion_margin) {
    if (!(start < stop)) throw Error("frequency grid requires start < stop");
    if (n_points < 2) throw Error("frequency grid requires n_points >= 2");
    if (exclusion_margin < 0.0) throw NonPositiveInput("exclusion_margin");
    return FrequencyGrid{start, stop, n_points, exclusion_margin};
}

const char* flag_name(PointFlag flag) {
    switch (flag) {
        case PointFlag::ok: return "ok";
        case PointFlag::stopband: return "stopband";
        case PointFlag::pole_skipped: return "pole-skipped";
    }
    return "unknown";
}

SpectrumResult spectrum(const DeviceParams& device, const ResonatorParams& res,
                        const PumpConfig& pump, const LossModel& loss,
                        const FrequencyGrid& grid, int n_threads) {
    validate_cell(res);
    const DispersionContext ctx = make_context(device, res);
    const double x = static_cast<double>(device.n_cells);
    const double f_pole = res.resonance_frequency / kTwoPi;

    SpectrumResult out;
    out.frequencies.resize(grid.n_points);
    out.gain_db.assign(grid.n_points, kNaN);
    out.lossy_gain_db.assign(grid.n_points, kNaN);
    out.squeeze_min_db.assign(grid.n_points, kNaN);
    out.squeeze_max_db.assign(grid.n_points, kNaN);
    out.flags.assign(grid.n_points, PointFlag::ok);

    parallel_for(grid.n_points, n_threads, [&](int i) {
        const double f = grid.frequency(i);
        out.frequencies[i] = f;

        const double f_idler = 2.0 * pump.pump_frequency - f;
        if (std::abs(f - f_pole) <= grid.exclusion_margin ||
            std::abs(f_idler - f_pole) <= grid.exclusion_margin) {
            out.flags[i] = PointFlag::pole_skipped;
            return;
        }
        try {
            const ModeCoefficients coeffs = coefficients(ctx, pump, kTwoPi * f, x);
            const SqueezeExtrema ext = squeezing_extrema(coeffs, loss);
            out.gain_db[i] = gain_db(coeffs);
            out.lossy_gain_db[i] = lossy_gain_db(coeffs, loss);
            out.squeeze_min_db[i] = 10.0 * std::log10(ext.s_min);
            out.squeeze_max_db[i] = 10.0 * std::log10(ext.s_max);
        } catch (const AtPole&) {
            out.flags[i] = PointFlag::pole_skipped;
        } catch (const Stopband&) {
            out.flags[i] = PointFlag::stopband;
        }
    });
    return out;
}

double bandwidth_above(const SpectrumResult& spec, const std::vector<double>& metric_db,
                       double threshold_db, double band_lo, double band_hi) {
    const auto& f = spec.frequencies;
    bool any_in_band = false;
    for (double fi : f) {
        if (fi >= band_lo && fi <= band_hi) { any_in_band = true; break; }
    }
    if (!any_in_band) throw EmptyBand("no grid points inside the requested band");

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        // flagged endpoints contribute nothing: no value to interpolate
        if (spec.flags[i] != PointFlag::ok || spec.flags[i + 1] != PointFlag::ok) continue;
        const double f1 = f[i], f2 = f[i + 1];
        if (f2 <= band_lo || f1 >= band_hi) continue;
        const double m1 = metric_db[i], m2 = metric_db[i + 1];
        const double slope = (m2 - m1) / (f2 - f1);
        const double a = std::max(f1, band_lo);
        const double b = std::min(f2, band_hi);
        if (!(b > a)) continue;
        const double ma = m1 + slope * (a - f1);
        const double mb = m1 + slope * (b - f1);

        const bool above_a = ma > threshold_db;
        const bool above_b = mb > threshold_db;
        if (above_a && above_b) {
            total += b - a;
        } else if (above_a != above_b) {
            const double t = (threshold_db - ma) / (mb - ma); // crossing fraction
            total += above_a ? t * (b - a) : (1.0 - t) * (b - a);
        }
    }
    return total;
}

double gain_bandwidth_above(const SpectrumResult& spec, double threshold_db,
                            double band_lo, double band_hi) {
    return bandwidth_above(spec, spec.lossy_gain_db, threshold_db, band_lo, band_hi);
}

double squeeze_bandwidth_above(const SpectrumResult& spec, double threshold_db,
                               double band_lo, double band_hi) {
    std::vector<double> abs_squeeze(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) abs_squeeze[i] = -spec.squeeze_min_db[i];
    return bandwidth_above(spec, abs_squeeze, threshold_db, band_lo, band_hi);
}

std::vector<CellSpectrum> sweep_1d(const DeviceParams& device, const PumpConfig& pump,
                                   const LossModel& loss, double target_resonance,
                                   SweptElement varied, const std::vector<double>& values,
                                   double fixed_value, const FrequencyGrid& grid,
                                   int n_threads) {
    std::vector<CellSpectrum> cells(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        CellSpectrum& cell = cells[i];
        cell.c_coupling = varied == SweptElement::c_coupling ? values[i] : fixed_value;
        cell.c_resonator = varied == SweptElement::c_resonator ? values[i] : fixed_value;
        try {
            const ResonatorParams res =
                solve_constraints(device, target_resonance, cell.c_coupling, cell.c_resonator);
            cell.spec = spectrum(device, res, pump, loss, grid, n_threads);
            cell.valid = true;
        } catch (const Error& e) {
            cell.valid = false;
            cell.error = e.what();
        }
    }
    return cells;
}

std::string Metric2D::name() const {
    switch (kind) {
        case Kind::gain_at_frequency: return "gain";
        case Kind::abs_squeezing_at_frequency: return "squeeze";
        case Kind::bandwidth_above_threshold:
            return bandwidth_source == Source::gain ? "bandwidth_gain" : "bandwidth_squeeze";
    }
    return "metric";
}

namespace {

/// Scalar metric of one solved cell; nullopt when the metric frequency is
/// flagged there.
std::optional<double> evaluate_metric(const DeviceParams& device, const ResonatorParams& res,
                                      const PumpConfig& pump, const LossModel& loss,
                                      const Metric2D& metric, const FrequencyGrid& grid) {
    if (metric.kind == Metric2D::Kind::bandwidth_above_threshold) {
        const SpectrumResult spec = spectrum(device, res, pump, loss, grid, 1);
        return metric.bandwidth_source == Metric2D::Source::gain
                   ? gain_bandwidth_above(spec, metric.threshold_db, metric.band_lo, metric.band_hi)
                   : squeeze_bandwidth_above(spec, metric.threshold_db, metric.band_lo,
                                             metric.band_hi);
    }
    const DispersionContext ctx = make_context(device, res);
    try {
        const ModeCoefficients coeffs =
            coefficients(ctx, pump, kTwoPi * metric.frequency, device.n_cells);
        if (metric.kind == Metric2D::Kind::gain_at_frequency) {
            return lossy_gain_db(coeffs, loss);
        }
        const SqueezeExtrema ext = squeezing_extrema(coeffs, loss);
        return -10.0 * std::log10(ext.s_min);
    } catch (const AtPole&) {
        return std::nullopt;
    } catch (const Stopband&) {
        return std::nullopt;
    }
}

} // namespace

SweepGrid2D sweep_2d(const DeviceParams& device, const PumpConfig& pump,
                     const LossModel& loss, double target_resonance,
                     const std::vector<double>& cc_values,
                     const std::vector<double>& cr_values, const Metric2D& metric,
                     const FrequencyGrid& grid, int n_threads) {
    SweepGrid2D out;
    out.cc_values = cc_values;
    out.cr_values = cr_values;
    out.metric_name = metric.name();
    out.field.assign(cr_values.size(),
                     std::vector<std::optional<double>>(cc_values.size(), std::nullopt));

    const int n_cc = static_cast<int>(cc_values.size());
    const int n_total = n_cc * static_cast<int>(cr_values.size());
    parallel_for(n_total, n_threads, [&](int idx) {
        const int i = idx / n_cc; // cr row
        const int j = idx % n_cc; // cc column
        try {
            const ResonatorParams res =
                solve_constraints(device, target_resonance, cc_values[j], cr_values[i]);
            out.field[i][j] = evaluate_metric(device, res, pump, loss, metric, grid);
        } catch (const Error&) {
            out.field[i][j] = std::nullopt; // infeasible cell stays flagged
        }
    });
    return out;
}

std::vector<SpectrumResult> loss_sweep(const DeviceParams& device,
                                       const ResonatorParams& res, const PumpConfig& pump,
                                       const std::vector<double>& eta_values,
                                       const FrequencyGrid& grid, int n_threads) {
    std::vector<SpectrumResult> out;
    out.reserve(eta_values.size());
    for (double eta : eta_values) {
        out.push_back(spectrum(device, res, pump, make_loss(eta), grid, n_threads));
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw Error("linspace requires n >= 1");
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) / (n - 1) * i;
    return out;
}

} // namespace twpa
