#pragma once

// Closed-form three-mode coupled-mode solution: the Bogoliubov pair (u, v)
// and the parametric exponent g, plus the gain, beam-splitter loss, and
// quadrature-squeezing spectrum built from them.

#include <complex>

#include "twpa/dispersion.hpp"

namespace twpa {

/// Pump tone with its normalized amplitude beta = I_p / (4 I_c).
struct PumpConfig {
    double pump_current = 0.0;   // I_p, A
    double pump_frequency = 0.0; // f_p, Hz
    double beta = 0.0;           // dimensionless, in [0, 0.25)
};

/// Validates and derives beta. Requires I_p >= 0, f_p > 0 and beta < 0.25
/// (pump below the critical current).
PumpConfig make_pump(double pump_current, double pump_frequency,
                     const DeviceParams& device);

/// u, v, g at one signal frequency and position, with the mismatches that
/// produced them. position is in unit cells.
struct ModeCoefficients {
    std::complex<double> u{1.0, 0.0};
    std::complex<double> v{0.0, 0.0};
    std::complex<double> g{0.0, 0.0};
    double delta_k = 0.0;        // total mismatch
    double delta_k_linear = 0.0; // linear mismatch
    double position = 0.0;       // x, unit cells
    bool degenerate = false;     // signal coincides with the pump
};

/// Output beam splitter transmittance.
struct LossModel {
    double eta = 1.0; // in [0, 1]
};

LossModel make_loss(double eta);

/// Evaluates u, v, g at physical signal angular frequency omega_signal
/// (rad/s) and position x (unit cells). g is the complex principal square
/// root of beta^4 k k_i - (dk/2)^2, so one expression covers both the
/// amplifying (g real) and oscillatory (g imaginary) regimes; the g -> 0
/// degeneracy uses the series limit sinh(g x)/g -> x.
/// Throws Stopband / AtPole when signal, pump, or idler cannot propagate.
ModeCoefficients coefficients(const DispersionContext& ctx, const PumpConfig& pump,
                              double omega_signal, double position);

/// Signal gain G = 10 log10 |u|^2, always >= 0 dB.
double gain_db(const ModeCoefficients& coeffs);

/// Mean-field gain through the output beam splitter: 10 log10 (eta |u|^2).
double lossy_gain_db(const ModeCoefficients& coeffs, const LossModel& loss);

/// Quadrature spectrum at angle theta:
/// S(theta) = 1 + 2 eta |v|^2 + 2 eta Re[e^{-i theta} i u v].
/// Returns exactly 1 at eta = 0 or v = 0.
double squeezing_spectrum(const ModeCoefficients& coeffs, const LossModel& loss,
                          double theta);

/// Extremal spectral powers over theta (linear scale, not dB):
/// S_min = 1 + 2 eta |v|^2 - 2 eta |u||v|, S_max with + sign. Well defined
/// for every valid coefficient set, including the degenerate point, where
/// it is the continuum limit of the neighboring spectrum.
struct SqueezeExtrema {
    double s_min = 1.0;
    double s_max = 1.0;
};

SqueezeExtrema squeezing_extrema(const ModeCoefficients& coeffs, const LossModel& loss);

/// Both extremal quadratures in dB plus the extremal angles (radians in
/// [0, 2 pi)). The plotted "absolute squeezing" is |min_db|.
/// Throws DegeneratePump for a pumped signal exactly at the pump frequency:
/// the two-mode angle convention collapses there.
struct DeviceSqueezing {
    double min_db = 0.0;
    double max_db = 0.0;
    double theta_min = 0.0;
    double theta_max = 0.0;
};

DeviceSqueezing device_squeezing(const ModeCoefficients& coeffs, const LossModel& loss);

/// The theta = pi/2 slice S = 1 + 2 eta |v|^2 + 2 eta Re[u v], kept as a
/// separate accessor for figure reproduction.
double squeezing_pi_half(const ModeCoefficients& coeffs, const LossModel& loss);

} // namespace twpa
