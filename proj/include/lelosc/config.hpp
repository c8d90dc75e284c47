#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lelosc/lelmodel.hpp"
#include "lelosc/timesim.hpp"

namespace lelosc {

/// Calibrated synchronizing-lag default (see calibrate_sync).
inline constexpr double kCalibratedTauSync = 0.038724160734303105;

/// Configuration document mirroring the JSON schema:
/// grid{vg,xg} dvc{kp,ki,tau_dc,vdc_ref} current_lag{tau_i} sync{tau_sync}
/// scenario{p_base_mw,pdc_profile,t_end,dt,i_limit}. Unknown keys are
/// rejected; every key is required; all values must be finite.
struct ConfigDocument {
    double vg = 1.0;
    double xg = 0.65;
    double kp = 2.8;
    double ki = 2000.0;
    double tau_dc = 0.0377;
    double vdc_ref = 1.0;
    double tau_i = 0.001;
    double tau_sync = kCalibratedTauSync;
    double p_base_mw = 320.0;
    std::vector<std::pair<double, double>> pdc_profile;
    double t_end = 10.0;
    double dt = 5e-5;
    double i_limit = 1.5;

    friend bool operator==(const ConfigDocument& a, const ConfigDocument& b) = default;
};

/// Built-in defaults: the oscillation-prone controller tuning with the
/// calibrated synchronizing lag and a hold/ramp/hold profile to rated power.
[[nodiscard]] ConfigDocument default_config();

/// Parses a JSON document. Throws ConfigError on syntax errors, unknown or
/// missing keys, or non-finite values.
[[nodiscard]] ConfigDocument parse_config(const std::string& json_text);

/// Reads and parses a JSON config file. Throws ConfigError.
[[nodiscard]] ConfigDocument load_config(const std::string& path);

/// Serializes back to JSON; parse_config(serialize_config(c)) == c.
[[nodiscard]] std::string serialize_config(const ConfigDocument& cfg);

/// Feedback params at an explicit operating-point current.
[[nodiscard]] FeedbackParams to_params(const ConfigDocument& cfg, double id0);

/// Scenario with the document's own profile.
[[nodiscard]] Scenario to_scenario(const ConfigDocument& cfg);

/// Operating-point current implied by the final profile breakpoint power.
[[nodiscard]] double operating_current(const ConfigDocument& cfg);

} // namespace lelosc
