#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <lelosc/errors.hpp>
#include <lelosc/modeid.hpp>
#include <lelosc/timesim.hpp>

using namespace lelosc;

namespace {

Scenario base_scenario() {
    Scenario sc;
    sc.params = fast_dvc_params();
    const double half = 0.5 * rated_power(1.0, 0.65);
    sc.pdc_profile = {{0.0, half}, {1.0, half}};
    sc.t_end = 1.0;
    sc.dt = 5e-5;
    return sc;
}

double p2p(const TimeSeries& ts, double t_lo, double t_hi) {
    double lo = 1e300;
    double hi = -1e300;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts.time(i);
        if (t < t_lo || t > t_hi) continue;
        lo = std::min(lo, ts.samples[i]);
        hi = std::max(hi, ts.samples[i]);
    }
    return hi - lo;
}

} // namespace

TEST_CASE("network phasor solution") {
    auto np = network_solve(0.0, 0.0, 1.0, 0.65);
    CHECK(np.v == 1.0);
    CHECK(np.delta_v == 0.0);

    // rated point: terminal voltage sqrt(vg^2 - (xg*id)^2)
    const double g = 0.65;
    const double delta = -std::atan2(g, std::sqrt(1.0 - g * g));
    auto rated = network_solve(1.0, delta, 1.0, 0.65);
    CHECK(rated.v == doctest::Approx(std::sqrt(1.0 - g * g)).epsilon(1e-12));
    CHECK(rated.delta_v == doctest::Approx(delta).epsilon(1e-12));

    // phasor residual: v*e^{j*delta_v} = vg - j*xg*id*e^{j*delta}
    for (double id : {0.3, 0.8, 1.2}) {
        for (double d : {-0.5, 0.0, 0.4}) {
            auto p = network_solve(id, d, 1.0, 0.65);
            const std::complex<double> lhs = std::polar(p.v, p.delta_v);
            const std::complex<double> rhs =
                1.0 - std::complex<double>(0.0, 0.65 * id) * std::polar(1.0, d);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }

    // pushing the angle to -90 degrees at high current starves the bus
    CHECK_THROWS_AS((void)network_solve(1.4, -std::numbers::pi / 2.0, 1.0, 0.65),
                    VoltageCollapse);
}

TEST_CASE("transfer limits and rated power") {
    CHECK(max_transfer_power(1.0, 0.65) == doctest::Approx(1.0 / 1.3).epsilon(1e-15));
    CHECK(rated_power(1.0, 0.65) == doctest::Approx(0.75993420767853315).epsilon(1e-15));
    CHECK(rated_power(1.0, 0.0) == 1.0);
    CHECK_THROWS_AS((void)max_transfer_power(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)rated_power(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)rated_power(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("equilibrium current") {
    CHECK(equilibrium_current(0.0, 1.0, 0.65) == 0.0);
    CHECK(equilibrium_current(0.3, 1.0, 0.0) == doctest::Approx(0.3).epsilon(1e-15));

    // rated power flows at unit current
    const double pr = rated_power(1.0, 0.65);
    CHECK(equilibrium_current(pr, 1.0, 0.65) == doctest::Approx(1.0).epsilon(1e-9));

    // the bisection delivers the requested power
    for (double pdc : {0.1, 0.3, 0.5, 0.7}) {
        const double id = equilibrium_current(pdc, 1.0, 0.65);
        const double delivered = id * std::sqrt(1.0 - 0.65 * 0.65 * id * id);
        CHECK(delivered == doctest::Approx(pdc).epsilon(1e-12));
    }

    // exactly the maximum transferable power lands on the nose current
    const double p_max = max_transfer_power(1.0, 0.65);
    CHECK(equilibrium_current(p_max, 1.0, 0.65) == 1.0 / (0.65 * std::numbers::sqrt2));
    CHECK_THROWS_AS((void)equilibrium_current(0.8, 1.0, 0.65), InfeasibleLoad);
    CHECK_THROWS_AS((void)equilibrium_current(-0.1, 1.0, 0.65), std::invalid_argument);
}

TEST_CASE("scenario validation") {
    auto sc = base_scenario();
    CHECK_NOTHROW(sc.validate());

    auto bad = sc;
    bad.pdc_profile.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sc;
    bad.pdc_profile = {{0.5, 0.3}, {1.0, 0.3}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sc;
    bad.pdc_profile = {{0.0, 0.3}, {0.0, 0.4}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sc;
    bad.pdc_profile = {{0.0, 0.3}, {1.0, -0.1}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sc;
    bad.dt = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sc;
    bad.dt = 2.0; // exceeds t_end
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sc;
    bad.dt = 1e-3; // tau_i/20 = 5e-5 is the cap
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sc;
    bad.i_limit = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sc;
    bad.t_end = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sc;
    bad.p_base_mw = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("profile interpolation clamps at both ends") {
    auto sc = base_scenario();
    sc.pdc_profile = {{0.0, 0.2}, {1.0, 0.2}, {2.0, 0.6}, {5.0, 0.6}};
    CHECK(sc.pdc_at(-1.0) == 0.2);
    CHECK(sc.pdc_at(0.0) == 0.2);
    CHECK(sc.pdc_at(0.5) == 0.2);
    CHECK(sc.pdc_at(1.5) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(sc.pdc_at(2.0) == 0.6);
    CHECK(sc.pdc_at(99.0) == 0.6);
}

TEST_CASE("equilibrium initialization") {
    auto sc = base_scenario();
    auto s = init_equilibrium(sc);
    const double pdc0 = sc.pdc_at(0.0);
    const double id = equilibrium_current(pdc0, 1.0, 0.65);
    CHECK(s.vdc == 1.0);
    CHECK(s.xi == id / 2000.0);
    CHECK(s.id == id);
    CHECK(s.w == id);
    const double g = 0.65 * id;
    CHECK(s.delta == -std::atan2(g, std::sqrt(1.0 - g * g)));
    CHECK(std::abs(s.delta_v - s.delta) < 1e-12);
    CHECK(s.p_ac == doctest::Approx(pdc0).epsilon(1e-9));

    auto no_int = sc;
    no_int.params.ki = 0.0;
    CHECK_THROWS_AS((void)init_equilibrium(no_int), std::invalid_argument);

    auto clamped = sc;
    clamped.pdc_profile = {{0.0, 0.7}, {1.0, 0.7}};
    clamped.i_limit = 0.8; // equilibrium needs about 0.83 pu
    CHECK_THROWS_AS((void)init_equilibrium(clamped), InfeasibleLoad);
}

TEST_CASE("simulate requires both lags") {
    auto sc = base_scenario();
    sc.params.tau_i = 0.0;
    CHECK_THROWS_AS((void)simulate(sc), std::invalid_argument);
    auto sc2 = base_scenario();
    sc2.params.tau_sync = 0.0;
    CHECK_THROWS_AS((void)simulate(sc2), std::invalid_argument);
}

TEST_CASE("equilibrium persists under a constant load") {
    auto sc = base_scenario();
    auto res = simulate(sc);
    REQUIRE_FALSE(res.faulted());
    const char* chans[] = {"P_ac", "V", "V_dc", "i_d", "i_d_ref", "delta", "delta_v", "w"};
    for (const char* name : chans) {
        const auto& ts = res.signals.at(name);
        REQUIRE(ts.size() == 20001);
        double drift = 0.0;
        for (double v : ts.samples) drift = std::max(drift, std::abs(v - ts.samples.front()));
        CHECK(drift < 1e-6);
    }
    // DC power balance at the operating point
    const auto& pac = res.signals.at("P_ac");
    CHECK(pac.samples.front() == doctest::Approx(sc.pdc_at(0.0)).epsilon(1e-9));
    // units and time base
    CHECK(pac.unit == "pu");
    CHECK(res.signals.at("delta").unit == "rad");
    CHECK(pac.dt == sc.dt);
    CHECK(pac.t0 == 0.0);
}

TEST_CASE("current reference stays inside the clamp") {
    auto sc = base_scenario();
    sc.pdc_profile = {{0.0, 0.38}, {0.5, 0.74}, {1.0, 0.74}};
    auto res = simulate(sc);
    const auto& iref = res.signals.at("i_d_ref");
    for (double v : iref.samples) {
        CHECK(v >= 0.0);
        CHECK(v <= sc.i_limit);
    }
}

TEST_CASE("a near-limit load rings the resonant mode and grows") {
    auto sc = base_scenario();
    const double pt = 0.768; // just under the 1/1.3 pu transfer limit
    sc.pdc_profile = {{0.0, 0.5 * pt}, {1.0, 0.5 * pt}, {2.0, pt}, {6.0, pt}};
    sc.t_end = 6.0;
    auto res = simulate(sc);
    REQUIRE_FALSE(res.faulted());
    const auto& pac = res.signals.at("P_ac");
    CHECK(p2p(pac, 5.0, 6.0) > 2.0 * p2p(pac, 3.0, 4.0));
    auto mode = dominant_mode(pac, 4.0, 6.0);
    CHECK(mode.reliable);
    CHECK(mode.frequency_hz > 20.0);
    CHECK(mode.frequency_hz < 29.0);
    CHECK(mode.growth_rate > 0.0);
}

TEST_CASE("a small load step rings the mode the pole analysis predicts") {
    const double p20 = 0.2 * rated_power(1.0, 0.65);
    auto sc = base_scenario();
    sc.pdc_profile = {{0.0, p20}, {0.2, p20}, {0.2 + 5e-5, p20 + 1e-4}, {1.2, p20 + 1e-4}};
    sc.t_end = 1.2;
    auto res = simulate(sc);
    REQUIRE_FALSE(res.faulted());

    auto params = sc.params;
    params.id0 = equilibrium_current(p20, 1.0, 0.65);
    auto verdict = classify_stability(params);
    auto mode = dominant_mode(res.signals.at("i_d"), 0.25, 1.0);
    CHECK(mode.reliable);
    CHECK(std::abs(mode.frequency_hz - verdict.oscillation_frequency_hz) <
          0.05 * verdict.oscillation_frequency_hz);
    CHECK(std::abs(mode.growth_rate - verdict.dominant_pole.real()) <
          0.15 * std::abs(verdict.dominant_pole.real()));
}

TEST_CASE("overload ramp collapses the bus and keeps the prefix") {
    auto sc = base_scenario();
    sc.i_limit = 1.7;
    sc.pdc_profile = {{0.0, 0.3}, {0.5, 0.85}, {5.0, 0.85}};
    sc.t_end = 5.0;
    auto res = simulate(sc);
    CHECK(res.collapsed);
    CHECK_FALSE(res.diverged);
    CHECK(res.fault_time == doctest::Approx(4.754).epsilon(0.025));
    const auto& v = res.signals.at("V");
    CHECK(v.size() > 0);
    CHECK(v.size() < 100001);
    for (double x : v.samples) CHECK(x >= kCollapseVoltage);
}

TEST_CASE("halving dt shows fourth-order convergence of the full simulator") {
    // A brisk ramp at a damped operating point: the trajectory stays smooth
    // (no limiter events) and still rings hard enough at t_end for the
    // discretization error to sit far above the rounding floor.
    auto make = [](double dt) {
        Scenario sc;
        sc.params = fast_dvc_params();
        const double p90 = 0.9 * rated_power(1.0, 0.65);
        sc.pdc_profile = {{0.0, 0.5 * p90}, {0.1, 0.5 * p90}, {0.15, p90}, {0.4, p90}};
        sc.t_end = 0.4;
        sc.dt = dt;
        return simulate(sc);
    };
    auto final_state = [](const SimResult& r) {
        std::array<double, 3> out{};
        out[0] = r.signals.at("V_dc").samples.back();
        out[1] = r.signals.at("i_d").samples.back();
        out[2] = r.signals.at("delta").samples.back();
        return out;
    };
    auto a = final_state(make(5e-5));
    auto b = final_state(make(2.5e-5));
    auto c = final_state(make(1.25e-5));
    double e1 = 0.0;
    double e2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        e1 = std::max(e1, std::abs(a[i] - c[i]));
        e2 = std::max(e2, std::abs(b[i] - c[i]));
    }
    REQUIRE(e2 > 0.0);
    const double ratio = e1 / e2;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("per-unit to megawatt rescaling") {
    TimeSeries ts;
    ts.name = "P_ac";
    ts.unit = "pu";
    ts.dt = 0.1;
    ts.samples = {0.5, 1.0};
    auto mw = to_mw(ts, 320.0);
    CHECK(mw.unit == "MW");
    CHECK(mw.name == "P_ac");
    CHECK(mw.samples[0] == 160.0);
    CHECK(mw.samples[1] == 320.0);
    CHECK_THROWS_AS((void)to_mw(ts, 0.0), std::invalid_argument);
}
