#pragma once

#include <vector>

#include "lelosc/timeseries.hpp"

namespace lelosc {

/// Dominant oscillation mode of a windowed signal.
struct ModeEstimate {
    double frequency_hz = 0.0;
    double peak_to_peak = 0.0;
    double growth_rate = 0.0; ///< 1/s, negative = decaying
    double window_start = 0.0;
    double window_end = 0.0;
    double prominence_db = 0.0; ///< spectral peak over the median spectrum
    bool reliable = false;      ///< false = flat signal (prominence < 3 dB)
};

/// Instantaneous three-phase record.
struct ThreePhaseRecord {
    double dt = 0.0;
    std::vector<double> va, vb, vc;
    std::vector<double> ia, ib, ic;

    /// Throws std::invalid_argument on length mismatch or dt <= 0.
    void validate() const;
};

/// Estimates the dominant mode of series over [t_start, t_end] (clamped to
/// the series extent): mean detrend, Hann window, zero-padded FFT with
/// 3-bin quadratic log-magnitude peak interpolation; peak-to-peak of the
/// detrended window; growth rate from a least-squares line through the log
/// of the cycle-amplitude envelope (interleaved local max/min half
/// differences, parabolically refined, last 80% of the window). A peak
/// prominence below 3 dB flags the estimate unreliable.
[[nodiscard]] ModeEstimate dominant_mode(const TimeSeries& series, double t_start, double t_end);

/// Total instantaneous power va*ia + vb*ib + vc*ic, sample-wise.
[[nodiscard]] TimeSeries instantaneous_power(const ThreePhaseRecord& rec);

/// Sliding RMS over a window of cycles/f0 seconds, output per input step
/// starting at the first full window. Throws WindowTooShort if the series
/// is shorter than one window or sampled below 8 points per cycle of f0.
[[nodiscard]] TimeSeries rms_window(const TimeSeries& series, int cycles, double f0_hz);

/// Mode comparison of two series over a common window.
struct CompareReport {
    ModeEstimate a;
    ModeEstimate b;
    double delta_frequency_hz = 0.0;   ///< a - b
    double delta_peak_to_peak_rel = 0.0; ///< (a - b) / b
};

/// dominant_mode on both series over the same window, differences reported.
[[nodiscard]] CompareReport compare_runs(const TimeSeries& a, const TimeSeries& b,
                                         double t_start, double t_end);

} // namespace lelosc
