#include "lelosc/scan.hpp"

#include <stdexcept>

namespace lelosc {

std::vector<GainScanRow> gain_scan(const FeedbackParams& p, double k_lo, double k_hi, int count,
                                   Exec exec) {
    p.validate();
    if (!(k_lo >= 0.0) || !(k_hi >= k_lo))
        throw std::invalid_argument("gain_scan needs 0 <= k_lo <= k_hi");
    if (count < 1) throw std::invalid_argument("gain_scan needs count >= 1");
    const double eps = stability_margin_eps(p);
    std::vector<GainScanRow> rows(static_cast<std::size_t>(count));
    indexed_for(count, exec, [&](long long i) {
        const auto u = static_cast<std::size_t>(i);
        const double k = (count == 1)
                             ? k_lo
                             : k_lo + (k_hi - k_lo) * static_cast<double>(i) /
                                          static_cast<double>(count - 1);
        const StabilityVerdict v = classify_at_gain(p, k, eps);
        rows[u] = {k, v.dominant_pole.real(), v.oscillation_frequency_hz};
    });
    return rows;
}

std::vector<SyncScanRow> sync_scan(const FeedbackParams& p, const std::vector<double>& taus,
                                   double k_unstable, double k_stable, Exec exec) {
    p.validate();
    const double eps = stability_margin_eps(p);
    std::vector<SyncScanRow> rows(taus.size());
    indexed_for(static_cast<long long>(taus.size()), exec, [&](long long i) {
        const auto u = static_cast<std::size_t>(i);
        FeedbackParams q = p;
        q.tau_sync = taus[u];
        const StabilityVerdict at_hi = classify_at_gain(q, k_unstable, eps);
        const StabilityVerdict at_lo = classify_at_gain(q, k_stable, eps);
        SyncScanRow row;
        row.tau_sync = taus[u];
        row.feasible = at_hi.cls != StabilityClass::stable && at_lo.cls == StabilityClass::stable;
        row.f_osc_hz = at_hi.oscillation_frequency_hz;
        rows[u] = row;
    });
    return rows;
}

} // namespace lelosc
