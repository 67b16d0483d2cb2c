#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they check:
//  - a long-double re-evaluation of the loaded-line dispersion, written
//    from the circuit elements rather than through DispersionContext;
//  - an RK4 integrator with step-halving for the coupled-mode ODE system
//      du/dx = +i (dk/2) u + C v
//      dv/dx = +C u - i (dk/2) v,   u(0) = 1, v(0) = 0,
//    whose exact solution the closed-form (u, v) must reproduce.

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <stdexcept>

namespace oracle {

struct CellLd {
    long double c0, cc, cr, lr; // normalized elements
};

/// Propagating wavenumber, long double, straight from the dispersion
/// relation. Returns nullopt in the stopband.
inline std::optional<long double> wavenumber_ld(const CellLd& cell, long double w) {
    const long double w2 = w * w;
    const long double denom = 1.0L - w2 * (cell.cc + cell.cr) * cell.lr;
    const long double c_eff =
        cell.c0 + cell.cc * (1.0L - w2 * cell.cr * cell.lr) / denom;
    const long double radicand = c_eff / (1.0L - w2);
    if (radicand < 0.0L) return std::nullopt;
    return w * std::sqrt(radicand);
}

struct ModePair {
    std::complex<double> u;
    std::complex<double> v;
};

namespace detail {

inline ModePair rk4_fixed(double dk, double coupling, double length, int n_steps) {
    using cd = std::complex<double>;
    const cd half_dk(0.0, 0.5 * dk);
    cd u(1.0, 0.0), v(0.0, 0.0);
    const double h = length / n_steps;
    auto du = [&](const cd& uu, const cd& vv) { return half_dk * uu + coupling * vv; };
    auto dv = [&](const cd& uu, const cd& vv) { return coupling * uu - half_dk * vv; };
    for (int s = 0; s < n_steps; ++s) {
        const cd k1u = du(u, v), k1v = dv(u, v);
        const cd k2u = du(u + 0.5 * h * k1u, v + 0.5 * h * k1v);
        const cd k2v = dv(u + 0.5 * h * k1u, v + 0.5 * h * k1v);
        const cd k3u = du(u + 0.5 * h * k2u, v + 0.5 * h * k2v);
        const cd k3v = dv(u + 0.5 * h * k2u, v + 0.5 * h * k2v);
        const cd k4u = du(u + h * k3u, v + h * k3v);
        const cd k4v = dv(u + h * k3u, v + h * k3v);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    return ModePair{u, v};
}

} // namespace detail

/// Integrates the coupled-mode system with step halving until |u| and |v|
/// agree between refinements to rel_tol. coupling = beta^2 sqrt(k k_i).
inline ModePair integrate_coupled_modes(double dk, double coupling, double length,
                                        double rel_tol = 1e-9) {
    if (length == 0.0) return ModePair{{1.0, 0.0}, {0.0, 0.0}};
    int n = 64;
    ModePair prev = detail::rk4_fixed(dk, coupling, length, n);
    for (; n <= (1 << 22); ) {
        n *= 2;
        const ModePair next = detail::rk4_fixed(dk, coupling, length, n);
        const double scale = std::max(1.0, std::abs(next.u));
        const double du = std::abs(std::abs(next.u) - std::abs(prev.u));
        const double dv = std::abs(std::abs(next.v) - std::abs(prev.v));
        if (du <= rel_tol * scale && dv <= rel_tol * scale) return next;
        prev = next;
    }
    throw std::runtime_error("coupled-mode integrator failed to converge");
}

} // namespace oracle
