#include "twpa/circuit.hpp"

#include <cmath>
#include <numbers>

namespace twpa {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

DeviceParams derive_device(double critical_current, double junction_capacitance,
                           int n_cells, double line_impedance, double flux_quantum) {
    if (!(critical_current > 0.0)) throw NonPositiveInput("critical_current");
    if (!(junction_capacitance > 0.0)) throw NonPositiveInput("junction_capacitance");
    if (n_cells < 1) throw NonPositiveInput("n_cells");
    if (!(line_impedance > 0.0)) throw NonPositiveInput("line_impedance");
    if (!(flux_quantum > 0.0)) throw NonPositiveInput("flux_quantum");

    DeviceParams device;
    device.critical_current = critical_current;
    device.junction_capacitance = junction_capacitance;
    device.n_cells = n_cells;
    device.line_impedance = line_impedance;
    device.flux_quantum = flux_quantum;
    device.josephson_inductance = flux_quantum / (kTwoPi * critical_current);
    device.plasma_frequency =
        1.0 / std::sqrt(device.josephson_inductance * junction_capacitance);
    device.josephson_energy = critical_current * flux_quantum / kTwoPi;
    return device;
}

ResonatorParams solve_constraints(const DeviceParams& device, double target_resonance,
                                  double c_coupling, double c_resonator) {
    if (!(target_resonance > 0.0)) throw NonPositiveInput("target_resonance");
    if (c_coupling < 0.0) throw NonPositiveInput("c_coupling");
    if (c_resonator < 0.0) throw NonPositiveInput("c_resonator");

    const double c_effective = device.josephson_inductance /
                               (device.line_impedance * device.line_impedance);
    if (c_coupling > c_effective) {
        throw NegativeCapacitance("C_c exceeds C_eff = L_J/Z_0^2; C_0 would be negative");
    }
    const double c_sum = c_coupling + c_resonator;
    if (c_sum == 0.0) {
        throw ZeroDenominator("C_c + C_r = 0: resonance frequency undefined");
    }

    ResonatorParams res;
    res.c_coupling = c_coupling;
    res.c_resonator = c_resonator;
    res.c_ground = c_effective - c_coupling;
    res.l_resonator = 1.0 / (target_resonance * target_resonance * c_sum);
    res.resonance_frequency = 1.0 / std::sqrt(c_sum * res.l_resonator);
    res.c_effective = res.c_ground + res.c_coupling;
    return res;
}

std::complex<double> effective_impedance(const ResonatorParams& res, double omega) {
    if (!(omega > 0.0)) throw NonPositiveInput("omega");

    const double c_sum = res.c_coupling + res.c_resonator;
    const double denom = 1.0 - omega * omega * c_sum * res.l_resonator;
    if (std::abs(denom) < kPoleTolerance) {
        throw AtPole("effective impedance evaluated at the resonator pole");
    }
    const double numer = 1.0 - omega * omega * res.c_resonator * res.l_resonator;
    const double admittance = omega * (res.c_ground + res.c_coupling * numer / denom);
    return 1.0 / std::complex<double>(0.0, admittance);
}

NormalizedCell normalize(const DeviceParams& device, const ResonatorParams& res) {
    NormalizedCell cell;
    cell.c0 = res.c_ground / device.junction_capacitance;
    cell.cc = res.c_coupling / device.junction_capacitance;
    cell.cr = res.c_resonator / device.junction_capacitance;
    cell.lr = res.l_resonator / device.josephson_inductance;
    return cell;
}

} // namespace twpa
