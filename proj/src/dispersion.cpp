#include "twpa/dispersion.hpp"

#include <cmath>

namespace twpa {

DispersionContext make_context(const DeviceParams& device, const ResonatorParams& res) {
    return DispersionContext{normalize(device, res), device.plasma_frequency};
}

double effective_capacitance_norm(const DispersionContext& ctx, double omega_norm) {
    if (!(omega_norm > 0.0)) throw NonPositiveInput("omega_norm");

    const NormalizedCell& c = ctx.cell;
    const double w2 = omega_norm * omega_norm;
    const double denom = 1.0 - w2 * (c.cc + c.cr) * c.lr;
    if (std::abs(denom) < kPoleTolerance) {
        throw AtPole("effective capacitance evaluated at the resonator pole");
    }
    return c.c0 + c.cc * (1.0 - w2 * c.cr * c.lr) / denom;
}

double wavenumber(const DispersionContext& ctx, double omega_norm) {
    if (!(omega_norm > 0.0 && omega_norm < 1.0)) {
        throw NonPositiveInput("omega_norm must lie in (0, 1), below the plasma frequency");
    }
    const double c_eff = effective_capacitance_norm(ctx, omega_norm);
    const double radicand = c_eff / (1.0 - omega_norm * omega_norm);
    if (radicand < 0.0) {
        throw Stopband("evanescent frequency: no propagating wavenumber");
    }
    return omega_norm * std::sqrt(radicand);
}

double linear_mismatch(const DispersionContext& ctx, double omega_signal_norm,
                       double omega_pump_norm) {
    const double k_pump = wavenumber(ctx, omega_pump_norm);
    const double k_signal = wavenumber(ctx, omega_signal_norm);
    const double k_idler = wavenumber(ctx, 2.0 * omega_pump_norm - omega_signal_norm);
    return 2.0 * k_pump - k_signal - k_idler;
}

double total_mismatch(const DispersionContext& ctx, double omega_signal_norm,
                      double omega_pump_norm, double beta) {
    if (beta < 0.0) throw NonPositiveInput("beta");
    const double beta2 = beta * beta;
    const double dk_linear = linear_mismatch(ctx, omega_signal_norm, omega_pump_norm);
    return (1.0 + 2.0 * beta2) * dk_linear - 2.0 * beta2 * wavenumber(ctx, omega_pump_norm);
}

} // namespace twpa
