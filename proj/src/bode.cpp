#include "lelosc/bode.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lelosc {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

FrequencyPoint eval_point(const TransferFunction& g, double f) {
    const std::complex<double> h = freq_eval(g, f);
    const double mag = std::abs(h);
    FrequencyPoint pt;
    pt.frequency_hz = f;
    pt.magnitude_db = (mag <= 1e-15) ? kMagnitudeFloorDb
                                     : std::max(20.0 * std::log10(mag), kMagnitudeFloorDb);
    pt.phase_deg = std::arg(h) * kRadToDeg; // principal value; unwrapped later
    return pt;
}

/// Replaces principal-value phases with a continuous sweep seeded at index 0.
void unwrap(std::vector<FrequencyPoint>& pts) {
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double d = pts[i].phase_deg - pts[i - 1].phase_deg;
        while (d > 180.0) d -= 360.0;
        while (d < -180.0) d += 360.0;
        pts[i].phase_deg = pts[i - 1].phase_deg + d;
    }
}

} // namespace

std::vector<double> log_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_grid needs 0 < lo < hi");
    if (count < 2) throw std::invalid_argument("log_grid needs at least 2 points");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double llo = std::log10(lo);
    const double lhi = std::log10(hi);
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            std::pow(10.0, llo + (lhi - llo) * static_cast<double>(i) /
                                     static_cast<double>(count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<FrequencyPoint> bode_grid(const TransferFunction& g,
                                      const std::vector<double>& freqs_hz, Exec exec) {
    std::vector<FrequencyPoint> pts(freqs_hz.size());
    indexed_for(static_cast<long long>(freqs_hz.size()), exec, [&](long long i) {
        const auto k = static_cast<std::size_t>(i);
        pts[k] = eval_point(g, freqs_hz[k]);
    });
    unwrap(pts);
    return pts;
}

std::vector<FrequencyPoint> bode_sweep(const TransferFunction& g, double f_lo, double f_hi,
                                       int points_per_decade, Exec exec) {
    if (!(f_lo > 0.0) || !(f_hi > f_lo))
        throw std::invalid_argument("bode_sweep needs 0 < f_lo < f_hi");
    if (points_per_decade < 10)
        throw std::invalid_argument("bode_sweep needs at least 10 points per decade");
    const double decades = std::log10(f_hi / f_lo);
    const int count = std::max(2, static_cast<int>(std::lround(decades * points_per_decade)) + 1);
    return bode_grid(g, log_grid(f_lo, f_hi, count), exec);
}

} // namespace lelosc
