#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lelosc/lelmodel.hpp"
#include "lelosc/timeseries.hpp"

namespace lelosc {

/// AC bus voltage below this magnitude aborts a run as a voltage collapse.
inline constexpr double kCollapseVoltage = 0.2;

/// Time constant of the power-coupling washout state, s.
inline constexpr double kWashoutTau = 0.5;

/// Simulation configuration.
struct Scenario {
    FeedbackParams params;
    double p_base_mw = 320.0;
    /// Piecewise-linear DC load profile, (time s, P_dc pu) breakpoints.
    std::vector<std::pair<double, double>> pdc_profile;
    double t_end = 10.0;
    double dt = 5e-5;
    double i_limit = 1.5; ///< current-reference clamp, pu

    /// Throws std::invalid_argument on an invariant violation.
    void validate() const;

    /// Profile value at time t (clamped to the end values outside the range).
    [[nodiscard]] double pdc_at(double t) const;
};

/// Algebraic phasor network solution.
struct NetworkPoint {
    double v = 0.0;       ///< AC bus voltage magnitude, pu
    double delta_v = 0.0; ///< AC bus voltage angle, rad
};

/// Magnitude and angle of vg - j*xg*id*e^{j*delta}. Throws VoltageCollapse
/// if the magnitude falls below kCollapseVoltage.
[[nodiscard]] NetworkPoint network_solve(double id, double delta, double vg, double xg);

/// Maximum transferable power vg^2 / (2*xg).
[[nodiscard]] double max_transfer_power(double vg, double xg);

/// P_dc at the rated operating point id = 1: sqrt(vg^2 - xg^2).
[[nodiscard]] double rated_power(double vg, double xg);

/// Low-branch equilibrium current solving id*sqrt(vg^2 - (xg*id)^2) = pdc
/// by bisection to 1e-12. Throws InfeasibleLoad if pdc exceeds the maximum
/// transferable power.
[[nodiscard]] double equilibrium_current(double pdc, double vg, double xg);

/// Full simulator state.
struct SimState {
    double vdc = 1.0;    ///< DC-link voltage, pu
    double xi = 0.0;     ///< DVC integrator, pu*s
    double id = 0.0;     ///< delivered real current, pu
    double delta = 0.0;  ///< synchronizing angle, rad
    double w = 0.0;      ///< power-coupling washout state, pu
    double v = 0.0;      ///< AC bus voltage magnitude, pu (algebraic)
    double delta_v = 0.0; ///< AC bus voltage angle, rad (algebraic)
    double p_ac = 0.0;   ///< AC power into the load, pu (algebraic)
};

/// Steady state for the profile's initial power: vdc = vdc_ref, xi = id/ki,
/// delta = delta_v, w = id. All state derivatives vanish at this point.
[[nodiscard]] SimState init_equilibrium(const Scenario& sc);

/// Simulation output: named series plus fault flags. On a fault the series
/// hold the prefix up to the last accepted step.
struct SimResult {
    std::map<std::string, TimeSeries> signals;
    bool collapsed = false;
    bool diverged = false;
    double fault_time = 0.0;

    [[nodiscard]] bool faulted() const { return collapsed || diverged; }
};

/// Fixed-step RK4 integration of the DC-link / PI / current-lag /
/// synchronizing-lag ODEs with the algebraic phasor network solved at every
/// stage. Emits series P_ac, V, V_dc, i_d, i_d_ref, delta, delta_v, w.
[[nodiscard]] SimResult simulate(const Scenario& sc);

/// Rescales a pu series to MW.
[[nodiscard]] TimeSeries to_mw(const TimeSeries& series, double p_base_mw);

} // namespace lelosc
