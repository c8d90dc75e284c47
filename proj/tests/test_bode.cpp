#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include <lelosc/bode.hpp>
#include <lelosc/errors.hpp>

using namespace lelosc;

TEST_CASE("log_grid endpoints are exact") {
    auto g = log_grid(1.0, 100.0, 3);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == 1.0);
    CHECK(g[1] == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(g[2] == 100.0);

    auto h = log_grid(0.37, 412.0, 57);
    CHECK(h.front() == 0.37);
    CHECK(h.back() == 412.0);
    for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] > h[i - 1]);

    CHECK_THROWS_AS((void)log_grid(0.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS((void)log_grid(2.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS((void)log_grid(1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("low-pass magnitude falls monotonically") {
    TransferFunction g{Polynomial({1.0}), Polynomial({1.0, 1.0})};
    auto pts = bode_grid(g, log_grid(0.001, 1000.0, 200));
    for (std::size_t i = 1; i < pts.size(); ++i)
        CHECK(pts[i].magnitude_db < pts[i - 1].magnitude_db);

    // corner: |H| = 1/sqrt(2) at w = 1
    const double fc = 1.0 / (2.0 * std::numbers::pi);
    auto corner = bode_grid(g, {fc});
    CHECK(corner[0].magnitude_db == doctest::Approx(-10.0 * std::log10(2.0)).epsilon(1e-12));
    CHECK(corner[0].phase_deg == doctest::Approx(-45.0).epsilon(1e-12));
}

TEST_CASE("constant gain is flat at the exact dB value") {
    auto g = TransferFunction::constant(0.425);
    auto pts = bode_grid(g, log_grid(0.1, 1000.0, 64));
    const double want = 20.0 * std::log10(0.425);
    for (const auto& p : pts) {
        CHECK(p.magnitude_db == want);
        CHECK(p.phase_deg == 0.0);
    }
}

TEST_CASE("zero numerator floors at -300 dB") {
    TransferFunction g{Polynomial(), Polynomial({1.0, 1.0})};
    auto pts = bode_grid(g, log_grid(1.0, 100.0, 16));
    for (const auto& p : pts) CHECK(p.magnitude_db == kMagnitudeFloorDb);
}

TEST_CASE("double integrator has constant 180-degree phase") {
    TransferFunction g{Polynomial({1.0}), Polynomial({1.0, 0.0, 0.0})};
    auto pts = bode_grid(g, log_grid(0.01, 100.0, 128));
    for (const auto& p : pts) {
        CHECK(std::abs(p.phase_deg) == doctest::Approx(180.0).epsilon(1e-12));
        CHECK(p.phase_deg == pts.front().phase_deg); // no wrap jumps
    }
}

TEST_CASE("unwrapped phase has no wrap jumps through a resonance") {
    // zeta = 0.01: phase swings 0 to -180 within a narrow band
    const double wn = 2.0 * std::numbers::pi * 10.0;
    TransferFunction g{Polynomial({wn * wn}), Polynomial({1.0, 0.02 * wn, wn * wn})};
    auto pts = bode_grid(g, log_grid(0.1, 1000.0, 400));
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double delta = pts[i].phase_deg - pts[i - 1].phase_deg;
        CHECK(delta < 1e-9);   // phase falls monotonically
        CHECK(delta > -179.0); // and never takes a 360-degree wrap jump
    }
    CHECK(std::abs(pts.front().phase_deg) < 0.5);
    CHECK(pts.back().phase_deg == doctest::Approx(-180.0).epsilon(1e-3));
}

TEST_CASE("parallel sweep is bitwise identical to serial") {
    setenv("LELOSC_THREADS", "4", 1);
    TransferFunction g{Polynomial({3.0, 2.0, 1.0}), Polynomial({0.5, 1.0, 4.0, 2.0})};
    auto grid = log_grid(0.01, 500.0, 777);
    auto ser = bode_grid(g, grid, Exec::serial);
    auto par = bode_grid(g, grid, Exec::parallel);
    REQUIRE(ser.size() == par.size());
    for (std::size_t i = 0; i < ser.size(); ++i) {
        CHECK(ser[i].frequency_hz == par[i].frequency_hz);
        CHECK(ser[i].magnitude_db == par[i].magnitude_db);
        CHECK(ser[i].phase_deg == par[i].phase_deg);
    }
    unsetenv("LELOSC_THREADS");
}

TEST_CASE("sweep density and endpoints") {
    TransferFunction g{Polynomial({1.0}), Polynomial({1.0, 1.0})};
    auto pts = bode_sweep(g, 1.0, 100.0, 200);
    CHECK(pts.size() == 401);
    CHECK(pts.front().frequency_hz == 1.0);
    CHECK(pts.back().frequency_hz == 100.0);

    CHECK_THROWS_AS((void)bode_sweep(g, 1.0, 100.0, 5), std::invalid_argument);
    CHECK_THROWS_AS((void)bode_sweep(g, 10.0, 1.0, 100), std::invalid_argument);
}

TEST_CASE("pole on the grid propagates from the parallel path") {
    const double w = 2.0 * std::numbers::pi;
    TransferFunction g{Polynomial({1.0}), Polynomial({1.0, 0.0, w * w})};
    setenv("LELOSC_THREADS", "4", 1);
    CHECK_THROWS_AS((void)bode_grid(g, {0.5, 1.0, 2.0}, Exec::parallel), PoleOnAxis);
    unsetenv("LELOSC_THREADS");
    CHECK_THROWS_AS((void)bode_grid(g, {0.5, 1.0, 2.0}, Exec::serial), PoleOnAxis);
}
