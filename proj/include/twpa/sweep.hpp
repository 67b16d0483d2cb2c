#pragma once

// Spectrum evaluation over frequency grids and 1D/2D resonator-parameter
// grids, plus the bandwidth-above-threshold metric. Per-point evaluation is
// pure; grids may be evaluated concurrently and results are written by
// index, so output is deterministic regardless of scheduling.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twpa/mixer.hpp"

namespace twpa {

/// Uniform frequency grid in Hz with an optional half-width around the
/// resonator pole inside which points are skipped rather than evaluated.
struct FrequencyGrid {
    double start = 0.0;            // Hz
    double stop = 0.0;             // Hz
    int n_points = 0;              // >= 2
    double exclusion_margin = 0.0; // Hz

    double frequency(int i) const {
        return start + (stop - start) / (n_points - 1) * i;
    }
};

FrequencyGrid make_grid(double start, double stop, int n_points,
                        double exclusion_margin = 0.0);

enum class PointFlag { ok, stopband, pole_skipped };

const char* flag_name(PointFlag flag);

/// Frequency-indexed gain and squeezing arrays. Flagged points carry no
/// numeric values (NaN placeholders, serialized as nulls).
struct SpectrumResult {
    std::vector<double> frequencies;    // Hz
    std::vector<double> gain_db;        // lossless
    std::vector<double> lossy_gain_db;  // through the output beam splitter
    std::vector<double> squeeze_min_db; // 10 log10 S_min (<= 0)
    std::vector<double> squeeze_max_db; // 10 log10 S_max
    std::vector<PointFlag> flags;

    std::size_t size() const { return frequencies.size(); }
};

/// Per-point spectrum of one solved cell. Stopband/pole points are flagged,
/// never NaN-poisoned into neighbors.
SpectrumResult spectrum(const DeviceParams& device, const ResonatorParams& res,
                        const PumpConfig& pump, const LossModel& loss,
                        const FrequencyGrid& grid, int n_threads = 1);

/// Total measure (Hz) of frequencies inside [band_lo, band_hi] where the
/// given per-point metric exceeds threshold_db. Crossings between grid
/// points are located by linear interpolation; non-contiguous regions are
/// summed; flagged points count as below threshold. Throws EmptyBand when
/// no grid point falls inside the band.
double bandwidth_above(const SpectrumResult& spec, const std::vector<double>& metric_db,
                       double threshold_db, double band_lo, double band_hi);

/// Convenience overloads over the gain and |squeezing| columns.
double gain_bandwidth_above(const SpectrumResult& spec, double threshold_db,
                            double band_lo, double band_hi);
double squeeze_bandwidth_above(const SpectrumResult& spec, double threshold_db,
                               double band_lo, double band_hi);

/// One cell of a parameter sweep: the swept element values plus either a
/// spectrum or the constraint violation that invalidated the cell.
struct CellSpectrum {
    double c_coupling = 0.0;  // F
    double c_resonator = 0.0; // F
    bool valid = false;
    std::string error;        // set when !valid
    SpectrumResult spec;      // empty when !valid
};

enum class SweptElement { c_coupling, c_resonator };

/// Spectra along one resonator axis with the other element fixed.
std::vector<CellSpectrum> sweep_1d(const DeviceParams& device, const PumpConfig& pump,
                                   const LossModel& loss, double target_resonance,
                                   SweptElement varied, const std::vector<double>& values,
                                   double fixed_value, const FrequencyGrid& grid,
                                   int n_threads = 1);

/// Scalar metric evaluated on each cell of a 2D sweep.
struct Metric2D {
    enum class Kind { gain_at_frequency, abs_squeezing_at_frequency, bandwidth_above_threshold };
    enum class Source { gain, abs_squeezing };

    Kind kind = Kind::gain_at_frequency;
    double frequency = 0.0;    // Hz, point metrics
    double threshold_db = 0.0; // bandwidth metric
    double band_lo = 0.0;      // Hz
    double band_hi = 0.0;      // Hz
    Source bandwidth_source = Source::gain;

    std::string name() const;
};

/// 2D field over (C_c, C_r). matrix[i][j] pairs cr_values[i] with
/// cc_values[j]; infeasible cells hold nullopt, never zero.
struct SweepGrid2D {
    std::vector<double> cc_values; // F
    std::vector<double> cr_values; // F
    std::vector<std::vector<std::optional<double>>> field;
    std::string metric_name;
};

SweepGrid2D sweep_2d(const DeviceParams& device, const PumpConfig& pump,
                     const LossModel& loss, double target_resonance,
                     const std::vector<double>& cc_values,
                     const std::vector<double>& cr_values, const Metric2D& metric,
                     const FrequencyGrid& grid, int n_threads = 1);

/// Per-eta spectra of one fixed cell.
std::vector<SpectrumResult> loss_sweep(const DeviceParams& device,
                                       const ResonatorParams& res, const PumpConfig& pump,
                                       const std::vector<double>& eta_values,
                                       const FrequencyGrid& grid, int n_threads = 1);

/// Evenly spaced values including both endpoints (n >= 2), or {lo} for n = 1.
std::vector<double> linspace(double lo, double hi, int n);

} // namespace twpa
