#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "twpa/dispersion.hpp"

using namespace twpa;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFr = 6.06e9;
constexpr double kFp = 6.0e9;

// frozen 40-digit oracle values for the paper device at f = 5 GHz
constexpr double kKs5Ref = 0.075430893509977303;
constexpr double kKp6Ref = 0.092229306625639934;
constexpr double kKi7Ref = 0.10559603446187156;
constexpr double kDkl5Ref = 0.0034316852794310044;
constexpr double kDk5BetaPaperRef = 0.00067690419670869792;  // beta = 1.37/11
constexpr double kDk5BetaRoundRef = 0.00067891461888785445;  // beta = 0.1245

DeviceParams paper_device() { return derive_device(2.75e-6, 39.5e-15, 2000, 50.0); }

DispersionContext paper_context(double cc = 20e-15, double cr = 11e-12) {
    const DeviceParams device = paper_device();
    return make_context(device, solve_constraints(device, kTwoPi * kFr, cc, cr));
}

} // namespace

TEST_CASE("effective capacitance limits") {
    const DispersionContext ctx = paper_context();
    const NormalizedCell& c = ctx.cell;

    // w -> 0 recovers the Eq.-(11) loading
    CHECK(effective_capacitance_norm(ctx, 1e-8) ==
          doctest::Approx(c.c0 + c.cc).epsilon(1e-9));

    // loaded branch vanishes at w^2 = 1/(cr lr)
    const double w_zero = 1.0 / std::sqrt(c.cr * c.lr);
    CHECK(effective_capacitance_norm(ctx, w_zero) == doctest::Approx(c.c0).epsilon(1e-9));

    // decoupled resonator: cc = 0 pins c_eff to c0 at every frequency
    const DispersionContext bare = paper_context(0.0, 11e-12);
    for (double w : {0.01, 0.05, 0.0828, 0.3}) {
        CHECK(effective_capacitance_norm(bare, w) == bare.cell.c0);
    }

    CHECK_THROWS_AS(effective_capacitance_norm(ctx, -0.1), NonPositiveInput);
}

TEST_CASE("wavenumber limits, stopband, and pole") {
    const DispersionContext ctx = paper_context();

    SUBCASE("bare line is linear at low frequency") {
        const DispersionContext bare = paper_context(0.0, 11e-12);
        const double w = 1e-4;
        CHECK(wavenumber(bare, w) ==
              doctest::Approx(w * std::sqrt(bare.cell.c0)).epsilon(1e-6));
    }
    SUBCASE("loaded line limit k/w -> sqrt(c0+cc)") {
        const double w = 1e-5;
        CHECK(wavenumber(ctx, w) / w == doctest::Approx(1.1008622684270048).epsilon(1e-6));
    }
    SUBCASE("stopband just above the resonance") {
        // evanescent gap for the paper cell: (6.0600, 6.0623) GHz
        const double w = ctx.to_normalized(kTwoPi * 6.061e9);
        CHECK_THROWS_AS(wavenumber(ctx, w), Stopband);
    }
    SUBCASE("pole throws AtPole") {
        const double w_pole = 1.0 / std::sqrt((ctx.cell.cc + ctx.cell.cr) * ctx.cell.lr);
        CHECK_THROWS_AS(wavenumber(ctx, w_pole), AtPole);
    }
    SUBCASE("out-of-band frequencies are rejected") {
        CHECK_THROWS_AS(wavenumber(ctx, 0.0), NonPositiveInput);
        CHECK_THROWS_AS(wavenumber(ctx, 1.0), NonPositiveInput);
    }
}

TEST_CASE("wavenumber matches the frozen oracle at the paper frequencies") {
    const DispersionContext ctx = paper_context();
    CHECK(wavenumber(ctx, ctx.to_normalized(kTwoPi * 5e9)) ==
          doctest::Approx(kKs5Ref).epsilon(1e-12));
    CHECK(wavenumber(ctx, ctx.to_normalized(kTwoPi * 6e9)) ==
          doctest::Approx(kKp6Ref).epsilon(1e-12));
    CHECK(wavenumber(ctx, ctx.to_normalized(kTwoPi * 7e9)) ==
          doctest::Approx(kKi7Ref).epsilon(1e-12));

    // long-double re-evaluation from the raw elements
    const oracle::CellLd cell{ctx.cell.c0, ctx.cell.cc, ctx.cell.cr, ctx.cell.lr};
    const double w5 = ctx.to_normalized(kTwoPi * 5e9);
    const auto k5 = oracle::wavenumber_ld(cell, w5);
    REQUIRE(k5.has_value());
    CHECK(wavenumber(ctx, w5) == doctest::Approx(static_cast<double>(*k5)).epsilon(1e-13));
}

TEST_CASE("mismatches") {
    const DispersionContext ctx = paper_context();
    const double wp = ctx.to_normalized(kTwoPi * kFp);
    const double w5 = ctx.to_normalized(kTwoPi * 5e9);

    SUBCASE("degenerate signal gives zero linear mismatch") {
        CHECK(linear_mismatch(ctx, wp, wp) == 0.0);
    }
    SUBCASE("frozen oracle value at 5 GHz") {
        CHECK(linear_mismatch(ctx, w5, wp) == doctest::Approx(kDkl5Ref).epsilon(1e-9));
        CHECK(total_mismatch(ctx, w5, wp, 0.1245) ==
              doctest::Approx(kDk5BetaRoundRef).epsilon(1e-9));
        CHECK(total_mismatch(ctx, w5, wp, 1.37e-6 / (4.0 * 2.75e-6)) ==
              doctest::Approx(kDk5BetaPaperRef).epsilon(1e-9));
    }
    SUBCASE("zero pump reduces to the linear mismatch") {
        CHECK(total_mismatch(ctx, w5, wp, 0.0) == linear_mismatch(ctx, w5, wp));
    }
    SUBCASE("vanishing linear mismatch leaves the pump phase term") {
        const double beta = 0.1;
        CHECK(total_mismatch(ctx, wp, wp, beta) ==
              doctest::Approx(-2.0 * beta * beta * wavenumber(ctx, wp)).epsilon(1e-15));
    }
    SUBCASE("stopband propagates") {
        CHECK_THROWS_AS(linear_mismatch(ctx, ctx.to_normalized(kTwoPi * 6.061e9), wp),
                        Stopband);
        // idler of 5.939 GHz lands inside the gap
        CHECK_THROWS_AS(linear_mismatch(ctx, ctx.to_normalized(kTwoPi * 5.939e9), wp),
                        Stopband);
    }
}

TEST_CASE("signal-idler symmetry of the linear mismatch") {
    const DispersionContext ctx = paper_context();
    const double wp = ctx.to_normalized(kTwoPi * kFp);
    std::mt19937_64 rng(7031);
    std::uniform_real_distribution<double> f_dist(1e9, 5.9e9);
    for (int i = 0; i < 300; ++i) {
        const double ws = ctx.to_normalized(kTwoPi * f_dist(rng));
        const double wi = 2.0 * wp - ws;
        CHECK(std::abs(linear_mismatch(ctx, ws, wp) - linear_mismatch(ctx, wi, wp)) < 1e-12);
    }
}

TEST_CASE("consistency with the SI impedance across random cells") {
    const DeviceParams device = paper_device();
    std::mt19937_64 rng(99101);
    std::uniform_real_distribution<double> cc_dist(1e-15, 45e-15);
    std::uniform_real_distribution<double> cr_dist(1e-12, 60e-12);
    std::uniform_real_distribution<double> f_dist(0.5e9, 11e9);

    int checked = 0;
    while (checked < 1000) {
        const ResonatorParams res =
            solve_constraints(device, kTwoPi * kFr, cc_dist(rng), cr_dist(rng));
        const DispersionContext ctx = make_context(device, res);
        const double f = f_dist(rng);
        const double omega = kTwoPi * f;
        const double w = ctx.to_normalized(omega);

        // stay away from the pole where both sides blow up
        const double denom = 1.0 - w * w * (ctx.cell.cc + ctx.cell.cr) * ctx.cell.lr;
        if (std::abs(denom) < 1e-3) continue;

        const double lhs = effective_capacitance_norm(ctx, w);
        const std::complex<double> inv = 1.0 / effective_impedance(res, omega);
        const double rhs = inv.imag() / (omega * device.junction_capacitance);
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-10);
        ++checked;
    }
}

TEST_CASE("resonant phase matching: total mismatch changes sign across the band") {
    const DispersionContext ctx = paper_context();
    const double wp = ctx.to_normalized(kTwoPi * kFp);
    const double beta = 1.37e-6 / (4.0 * 2.75e-6);

    bool sign_change = false;
    double prev = 0.0;
    bool have_prev = false;
    for (double f = 1e9; f <= 5.99e9; f += 1e7) {
        double dk;
        try {
            dk = total_mismatch(ctx, ctx.to_normalized(kTwoPi * f), wp, beta);
        } catch (const Error&) {
            continue; // idler at the pole or inside the gap
        }
        if (have_prev && std::signbit(dk) != std::signbit(prev)) sign_change = true;
        prev = dk;
        have_prev = true;
    }
    CHECK(sign_change);
}

TEST_CASE("wavenumber is monotone below the gap") {
    const DispersionContext ctx = paper_context();
    const double w_pole = 1.0 / std::sqrt((ctx.cell.cc + ctx.cell.cr) * ctx.cell.lr);
    double prev = 0.0;
    for (int i = 1; i <= 2000; ++i) {
        const double w = w_pole * 0.9999 * i / 2000.0;
        const double k = wavenumber(ctx, w);
        CHECK(k > prev);
        prev = k;
    }
}
