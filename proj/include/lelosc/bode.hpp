#pragma once

#include <vector>

#include "lelosc/exec.hpp"
#include "lelosc/transfer_function.hpp"

namespace lelosc {

/// One point of a frequency sweep. Phase is unwrapped along the sweep it
/// belongs to (no +-360 degree jumps between consecutive points).
struct FrequencyPoint {
    double frequency_hz = 0.0;
    double magnitude_db = 0.0;
    double phase_deg = 0.0;
};

/// Magnitudes at or below this level are floored to -300 dB.
inline constexpr double kMagnitudeFloorDb = -300.0;

/// Logarithmically spaced sweep of g over [f_lo, f_hi] with the requested
/// density. Phase is seeded from the exact principal argument at f_lo and
/// accumulated continuously. Propagates PoleOnAxis.
[[nodiscard]] std::vector<FrequencyPoint> bode_sweep(const TransferFunction& g, double f_lo,
                                                     double f_hi, int points_per_decade,
                                                     Exec exec = Exec::serial);

/// Sweep over an explicit frequency grid (same magnitude floor and unwrap).
[[nodiscard]] std::vector<FrequencyPoint> bode_grid(const TransferFunction& g,
                                                    const std::vector<double>& freqs_hz,
                                                    Exec exec = Exec::serial);

/// Log-spaced grid with exact endpoints.
[[nodiscard]] std::vector<double> log_grid(double lo, double hi, int count);

} // namespace lelosc
