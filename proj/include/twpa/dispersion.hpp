#pragma once

// Wavenumber of the linearized loaded line and the phase mismatches entering
// the coupled-mode solution. Everything here works in normalized units:
// frequencies are w / w_J, wavenumbers are radians per unit cell.

#include "twpa/circuit.hpp"

namespace twpa {

/// Immutable evaluation context: the normalized cell plus the plasma
/// frequency used to map physical frequencies onto w / w_J.
struct DispersionContext {
    NormalizedCell cell;
    double plasma_frequency = 0.0; // rad/s

    /// Normalized frequency of a physical angular frequency (rad/s).
    double to_normalized(double omega) const { return omega / plasma_frequency; }
};

/// Context for a solved cell.
DispersionContext make_context(const DeviceParams& device, const ResonatorParams& res);

/// Frequency-dependent effective loading capacitance
/// c_eff(w) = c0 + cc (1 - w^2 cr lr) / (1 - w^2 (cc + cr) lr).
/// Throws AtPole within kPoleTolerance of the resonator pole.
double effective_capacitance_norm(const DispersionContext& ctx, double omega_norm);

/// Per-cell wavenumber k(w) = w sqrt(c_eff(w) / (1 - w^2)), positive real.
/// Throws Stopband when the radicand is negative (evanescent gap above the
/// resonance) and AtPole at the pole itself.
double wavenumber(const DispersionContext& ctx, double omega_norm);

/// Linear mismatch dk_L = 2 k(w_p) - k(w) - k(2 w_p - w).
double linear_mismatch(const DispersionContext& ctx, double omega_signal_norm,
                       double omega_pump_norm);

/// Total mismatch including the pump self/cross-phase corrections:
/// dk = (1 + 2 beta^2) dk_L - 2 beta^2 k(w_p).
double total_mismatch(const DispersionContext& ctx, double omega_signal_norm,
                      double omega_pump_norm, double beta);

} // namespace twpa
