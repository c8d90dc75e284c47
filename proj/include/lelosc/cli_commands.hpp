#pragma once

#include <optional>
#include <string>

namespace lelosc {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,     ///< config or CSV parse error
    kExitNumerical = 3, ///< numerical failure in the analysis
    kExitNoBracket = 4, ///< gain sweep bracket never destabilizes
    kExitSimFault = 5,  ///< voltage collapse or divergence (partial CSVs kept)
    kExitFlat = 6,      ///< flat signal (estimate still written)
};

/// Bode sweep of gdvc | gsync | loopgain; writes
/// (frequency_hz, magnitude_db, phase_deg_unwrapped) CSV and prints the
/// resonant frequency.
int cmd_bode(const std::string& config_path, const std::string& which, double f_lo, double f_hi,
             const std::string& out_path);

/// Closed-loop disturbance step response CSV (t, delta_v_ac) plus a printed
/// stability verdict. k_override replaces the operating-point gain.
int cmd_step(const std::string& config_path, std::optional<double> k_override,
             const std::string& out_path);

/// Gain sweep CSV (k, max_pole_real, freq_hz) and the bisected critical gain.
int cmd_sweep(const std::string& config_path, double k_lo, double k_hi, int points,
              const std::string& out_path);

/// Nonlinear simulation at a load level (percent of rated power); writes
/// per-signal CSVs and prints the mode estimate of P_ac over the final 2 s.
int cmd_sim(const std::string& config_path, std::optional<double> level_percent,
            const std::string& out_dir);

/// Mode identification of a CSV series (single or three-phase); writes the
/// estimate as JSON and prints it.
int cmd_analyze(const std::string& csv_path, std::optional<double> window_start,
                std::optional<double> window_end, const std::string& out_path);

} // namespace lelosc
