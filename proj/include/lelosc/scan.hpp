#pragma once

#include <vector>

#include "lelosc/exec.hpp"
#include "lelosc/lelmodel.hpp"

namespace lelosc {

/// One row of a loop-gain sweep.
struct GainScanRow {
    double k = 0.0;
    double max_pole_real = 0.0;
    double freq_hz = 0.0; ///< oscillation frequency of the dominant pole
};

/// Classifies the closed loop on a uniform k grid over [k_lo, k_hi]
/// (count points; count = 1 evaluates k_lo only).
[[nodiscard]] std::vector<GainScanRow> gain_scan(const FeedbackParams& p, double k_lo,
                                                 double k_hi, int count,
                                                 Exec exec = Exec::serial);

/// One row of a synchronizing-lag feasibility scan.
struct SyncScanRow {
    double tau_sync = 0.0;
    bool feasible = false; ///< not stable at k_unstable AND stable at k_stable
    double f_osc_hz = 0.0; ///< oscillation frequency at k_unstable
};

/// Evaluates the calibration constraints at every tau_sync grid value.
[[nodiscard]] std::vector<SyncScanRow> sync_scan(const FeedbackParams& p,
                                                 const std::vector<double>& taus,
                                                 double k_unstable, double k_stable,
                                                 Exec exec = Exec::serial);

} // namespace lelosc
