#pragma once

#include <complex>
#include <optional>

#include "lelosc/exec.hpp"
#include "lelosc/transfer_function.hpp"

namespace lelosc {

/// Every parameter of the DC-link voltage-control feedback loop.
struct FeedbackParams {
    double kp = 0.0;       ///< DVC proportional gain, pu current per pu voltage
    double ki = 0.0;       ///< DVC integral gain, pu/s
    double tau_dc = 0.0;   ///< DC-link inertia constant, s
    double tau_i = 0.0;    ///< current-tracking lag, s
    double tau_sync = 0.0; ///< synchronizing-lag time constant, s
    double xg = 0.0;       ///< grid reactance, pu
    double id0 = 0.0;      ///< operating-point real current, pu
    double vg = 1.0;       ///< Thevenin source magnitude, pu
    double vdc_ref = 1.0;  ///< DC-link voltage reference, pu

    /// Throws std::invalid_argument on an invariant violation.
    void validate() const;

    /// Loop gain magnitude at DC: (xg*id0)^2.
    [[nodiscard]] double gain() const {
        double g = xg * id0;
        return g * g;
    }
};

/// High-bandwidth controller tuning (prone to the resonant oscillation).
[[nodiscard]] FeedbackParams fast_dvc_params();

/// Low-bandwidth controller tuning (damped at all operating points).
[[nodiscard]] FeedbackParams slow_dvc_params();

enum class StabilityClass { stable, marginal, unstable };

/// Stability call from the closed-loop pole set. The margin band is
/// eps = 1e-6 * 2*pi*f_res, with f_res the voltage-loop resonant frequency.
struct StabilityVerdict {
    StabilityClass cls = StabilityClass::stable;
    std::complex<double> dominant_pole;   ///< pole with maximal real part (Im >= 0)
    double oscillation_frequency_hz = 0.0; ///< |Im(dominant_pole)| / 2*pi
    double damping_ratio = 0.0;
    double margin_eps = 0.0;
};

[[nodiscard]] const char* to_string(StabilityClass cls);

/// Disturbance-to-output channel of the closed loop.
enum class LoopOutput { ac_voltage, dc_voltage, current };

/// DC-link plant 1/(2*tau_dc*s).
[[nodiscard]] TransferFunction build_plant(const FeedbackParams& p);

/// Closed voltage loop (Kp*s + Ki) / (2*tau_dc*tau_i*s^3 + 2*tau_dc*s^2 + Kp*s + Ki);
/// without the current lag the cubic term drops.
[[nodiscard]] TransferFunction build_gdvc(const FeedbackParams& p, bool include_current_lag);

/// Synchronizing lag 1/(tau_sync*s + 1); unity when tau_sync = 0.
[[nodiscard]] TransferFunction build_gsync(const FeedbackParams& p);

/// Open-loop gain -(xg*id0)^2 * G_dvc * G_sync (current lag included).
[[nodiscard]] TransferFunction build_loop_gain(const FeedbackParams& p);

/// Characteristic polynomial of the closed disturbance loop,
/// den(G_dvc)*den(G_sync) + k*num(G_dvc), i.e. the zero set of
/// 1 - loop_gain = 1 + k*G_dvc*G_sync. At k = 0 this is den(G_dvc) exactly.
[[nodiscard]] Polynomial closed_loop_char(const FeedbackParams& p, double k);

/// Transfer function from DC-load power disturbance to the chosen output.
/// All outputs share the characteristic polynomial above.
[[nodiscard]] TransferFunction build_closed_loop(const FeedbackParams& p, LoopOutput output);

/// Stability verdict at an explicit loop gain k (pu^2), reusing a
/// precomputed margin band when given.
[[nodiscard]] StabilityVerdict classify_at_gain(const FeedbackParams& p, double k,
                                                std::optional<double> margin_eps = std::nullopt);

/// Stability verdict at the params' own operating point, k = (xg*id0)^2.
[[nodiscard]] StabilityVerdict classify_stability(const FeedbackParams& p);

/// Margin band for the verdict classes: 1e-6 * 2*pi*f_res of the voltage loop.
[[nodiscard]] double stability_margin_eps(const FeedbackParams& p);

/// Critical gain where the dominant pole pair crosses the imaginary axis.
/// Requires classify stable at k_lo and not stable at k_hi (BracketInvalid
/// otherwise); bisects to |interval| < 1e-4.
[[nodiscard]] double critical_gain(const FeedbackParams& p, double k_lo, double k_hi);

/// Resonance search result.
struct ResonantPeak {
    double frequency_hz = 0.0;
    double magnitude_db = 0.0;
    bool flat = false; ///< spectrum varies by < 0.1 dB; frequency_hz = f_lo
};

/// Argmax of |g(j*2*pi*f)| on a 2000-point log grid over [f_lo, f_hi],
/// refined by golden-section search to 0.01 Hz.
[[nodiscard]] ResonantPeak resonant_frequency(const TransferFunction& g, double f_lo,
                                              double f_hi);

/// Synchronizing-lag calibration result.
struct SyncCalibration {
    double tau_sync = 0.0;
    double f_osc_hz = 0.0; ///< oscillation frequency achieved at k_unstable
};

/// Scans tau_sync over a 200-point log grid on [0.001, 0.05] s and returns
/// the point minimizing |f_osc - 26 Hz| subject to: not stable at k_unstable
/// and stable at k_stable. Throws BracketInvalid if k_stable >= k_unstable,
/// NoFeasibleSync if no grid point satisfies both constraints.
[[nodiscard]] SyncCalibration calibrate_sync(const FeedbackParams& p, double k_unstable,
                                             double k_stable, Exec exec = Exec::serial);

} // namespace lelosc
