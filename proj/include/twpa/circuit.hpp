#pragma once

// Physical unit-cell constants, normalization to Josephson units, the
// LC-resonator parametrization, and the impedance-constraint solver that
// turns the two free parameters (C_c, C_r) into a complete unit cell.
//
// All public APIs accept SI values; conversion to normalized (Josephson)
// units happens once, in normalize().

#include <complex>

#include "twpa/errors.hpp"

namespace twpa {

/// Magnetic flux quantum, Wb (CODATA). Pinned so derived values are
/// reproducible: the device tables quote constants rounded differently.
inline constexpr double kFluxQuantum = 2.067833848e-15;

/// Denominator magnitude below which Eq.-(9)-style expressions are treated
/// as being at the resonator pole. Dimensionless after normalization.
inline constexpr double kPoleTolerance = 1e-9;

/// Junction and line constants plus the derived Josephson scales.
struct DeviceParams {
    double critical_current = 0.0;      // I_c, A
    double junction_capacitance = 0.0;  // C_J, F
    int n_cells = 0;                    // N_JJ
    double line_impedance = 0.0;        // Z_0, Ohm
    double flux_quantum = kFluxQuantum; // Phi_0, Wb

    double josephson_inductance = 0.0;  // L_J = Phi_0 / (2 pi I_c), H
    double plasma_frequency = 0.0;      // w_J = (L_J C_J)^(-1/2), rad/s
    double josephson_energy = 0.0;      // E_J = I_c Phi_0 / (2 pi), J
};

/// One resonator element set with its derived resonance and the effective
/// (low-frequency) loading capacitance.
struct ResonatorParams {
    double c_ground = 0.0;     // C_0, F
    double c_coupling = 0.0;   // C_c, F
    double c_resonator = 0.0;  // C_r, F
    double l_resonator = 0.0;  // L_r, H

    double resonance_frequency = 0.0; // w_r = [(C_c + C_r) L_r]^(-1/2), rad/s
    double c_effective = 0.0;         // C_eff = C_0 + C_c, F
};

/// Element values divided by the junction values (dimensionless).
struct NormalizedCell {
    double c0 = 0.0; // C_0 / C_J
    double cc = 0.0; // C_c / C_J
    double cr = 0.0; // C_r / C_J
    double lr = 0.0; // L_r / L_J
};

/// Validates inputs and populates the derived Josephson scales.
/// Throws NonPositiveInput naming the offending field.
DeviceParams derive_device(double critical_current, double junction_capacitance,
                           int n_cells, double line_impedance,
                           double flux_quantum = kFluxQuantum);

/// Solves the fixed-impedance, fixed-resonance constraints for the remaining
/// elements: C_eff = L_J / Z_0^2, C_0 = C_eff - C_c,
/// L_r = 1 / (w_r^2 (C_c + C_r)).
/// Throws NegativeCapacitance when c_coupling > C_eff and ZeroDenominator
/// when c_coupling + c_resonator = 0.
ResonatorParams solve_constraints(const DeviceParams& device, double target_resonance,
                                  double c_coupling, double c_resonator);

/// Exact effective impedance of the coupled resonator branch at angular
/// frequency omega (rad/s). Purely imaginary for these lossless elements.
/// Throws AtPole within kPoleTolerance of the resonance.
std::complex<double> effective_impedance(const ResonatorParams& res, double omega);

/// Element ratios in Josephson units.
NormalizedCell normalize(const DeviceParams& device, const ResonatorParams& res);

} // namespace twpa
