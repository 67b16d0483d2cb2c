#include "twpa/mixer.hpp"

#include <cmath>
#include <numbers>

namespace twpa {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegenerateRelTol = 1e-12;

/// sinh(z)/z with the removable singularity handled by its series; the
/// switchover keeps the two branches consistent to ~1e-16.
std::complex<double> sinhc(std::complex<double> z) {
    if (std::abs(z) < 1e-6) {
        const std::complex<double> z2 = z * z;
        return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
    }
    return std::sinh(z) / z;
}

} // namespace

PumpConfig make_pump(double pump_current, double pump_frequency,
                     const DeviceParams& device) {
    if (pump_current < 0.0) throw NonPositiveInput("pump_current");
    if (!(pump_frequency > 0.0)) throw NonPositiveInput("pump_frequency");

    PumpConfig pump;
    pump.pump_current = pump_current;
    pump.pump_frequency = pump_frequency;
    pump.beta = pump_current / (4.0 * device.critical_current);
    if (pump.beta >= 0.25) {
        throw Error("pump current at or above the junction critical current (beta >= 0.25)");
    }
    return pump;
}

LossModel make_loss(double eta) {
    if (eta < 0.0 || eta > 1.0) {
        throw Error("transmittance eta must lie in [0, 1]");
    }
    return LossModel{eta};
}

ModeCoefficients coefficients(const DispersionContext& ctx, const PumpConfig& pump,
                              double omega_signal, double position) {
    if (position < 0.0) throw NonPositiveInput("position");

    const double omega_pump = kTwoPi * pump.pump_frequency;
    const double ws = ctx.to_normalized(omega_signal);
    const double wp = ctx.to_normalized(omega_pump);
    const double wi = 2.0 * wp - ws;

    const double k_signal = wavenumber(ctx, ws);
    const double k_pump = wavenumber(ctx, wp);
    const double k_idler = wavenumber(ctx, wi);

    const double beta2 = pump.beta * pump.beta;
    const double dk_linear = 2.0 * k_pump - k_signal - k_idler;
    const double dk = (1.0 + 2.0 * beta2) * dk_linear - 2.0 * beta2 * k_pump;

    // principal branch: one expression covers g real (amplifying) and
    // g imaginary (oscillatory), continuous through g = 0
    const std::complex<double> g =
        std::sqrt(std::complex<double>(beta2 * beta2 * k_signal * k_idler - 0.25 * dk * dk));
    const std::complex<double> gx = g * position;
    const std::complex<double> sinh_over_g = position * sinhc(gx);

    ModeCoefficients coeffs;
    coeffs.u = std::cosh(gx) + std::complex<double>(0.0, 0.5 * dk) * sinh_over_g;
    coeffs.v = beta2 * std::sqrt(k_signal * k_idler) * sinh_over_g;
    coeffs.g = g;
    coeffs.delta_k = dk;
    coeffs.delta_k_linear = dk_linear;
    coeffs.position = position;
    coeffs.degenerate =
        std::abs(omega_signal - omega_pump) <= kDegenerateRelTol * omega_pump;
    return coeffs;
}

double gain_db(const ModeCoefficients& coeffs) {
    return 10.0 * std::log10(std::norm(coeffs.u));
}

double lossy_gain_db(const ModeCoefficients& coeffs, const LossModel& loss) {
    return 10.0 * std::log10(loss.eta * std::norm(coeffs.u));
}

double squeezing_spectrum(const ModeCoefficients& coeffs, const LossModel& loss,
                          double theta) {
    const std::complex<double> uv = coeffs.u * coeffs.v;
    const std::complex<double> rotated =
        std::polar(1.0, -theta) * std::complex<double>(0.0, 1.0) * uv;
    return 1.0 + 2.0 * loss.eta * std::norm(coeffs.v) + 2.0 * loss.eta * rotated.real();
}

SqueezeExtrema squeezing_extrema(const ModeCoefficients& coeffs, const LossModel& loss) {
    const double uv_mag = std::abs(coeffs.u) * std::abs(coeffs.v);
    const double base = 1.0 + 2.0 * loss.eta * std::norm(coeffs.v);
    return SqueezeExtrema{base - 2.0 * loss.eta * uv_mag, base + 2.0 * loss.eta * uv_mag};
}

DeviceSqueezing device_squeezing(const ModeCoefficients& coeffs, const LossModel& loss) {
    if (coeffs.degenerate && std::abs(coeffs.v) > 0.0) {
        throw DegeneratePump(
            "quadrature angles requested at the pump frequency: signal and idler coincide");
    }

    const SqueezeExtrema extrema = squeezing_extrema(coeffs, loss);
    DeviceSqueezing out;
    out.min_db = 10.0 * std::log10(extrema.s_min);
    out.max_db = 10.0 * std::log10(extrema.s_max);
    if (std::abs(coeffs.v) > 0.0 && loss.eta > 0.0) {
        // S(theta) = A + B cos(theta - theta0), theta0 = pi/2 + arg(u v)
        const double theta0 =
            std::numbers::pi / 2.0 + std::arg(coeffs.u * coeffs.v);
        out.theta_max = std::fmod(theta0 + kTwoPi, kTwoPi);
        out.theta_min = std::fmod(theta0 + std::numbers::pi + kTwoPi, kTwoPi);
    }
    return out;
}

double squeezing_pi_half(const ModeCoefficients& coeffs, const LossModel& loss) {
    const std::complex<double> uv = coeffs.u * coeffs.v;
    return 1.0 + 2.0 * loss.eta * std::norm(coeffs.v) + 2.0 * loss.eta * uv.real();
}

} // namespace twpa
