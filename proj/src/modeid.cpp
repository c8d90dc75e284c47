#include "lelosc/modeid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include <fftw3.h>

#include "lelosc/errors.hpp"

namespace lelosc {

namespace {

// FFTW's planner is not thread-safe; execution of a finished plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<double> spectrum_magnitudes(const std::vector<double>& padded) {
    const auto n = static_cast<int>(padded.size());
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n) / 2 + 1);
    std::vector<double> in = padded; // FFTW may touch the input buffer
    fftw_plan plan = nullptr;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("FFT plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    std::vector<double> mags(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) mags[i] = std::abs(out[i]);
    return mags;
}

struct Extremum {
    double t = 0.0;
    double value = 0.0;
    bool is_max = false;
};

/// Local extrema of x with parabolic vertex refinement; t_j = t0 + j*dt.
std::vector<Extremum> local_extrema(const std::vector<double>& x, double t0, double dt) {
    std::vector<Extremum> ext;
    for (std::size_t j = 1; j + 1 < x.size(); ++j) {
        const bool is_max = x[j] > x[j - 1] && x[j] >= x[j + 1];
        const bool is_min = x[j] < x[j - 1] && x[j] <= x[j + 1];
        if (!is_max && !is_min) continue;
        const double a = x[j - 1];
        const double b = x[j];
        const double c = x[j + 1];
        const double denom = a - 2.0 * b + c;
        double off = 0.0;
        double value = b;
        if (std::abs(denom) > 1e-300) {
            off = 0.5 * (a - c) / denom;
            off = std::clamp(off, -0.5, 0.5);
            value = b - 0.25 * (a - c) * off;
        }
        ext.push_back({t0 + (static_cast<double>(j) + off) * dt, value, is_max});
    }
    return ext;
}

/// Slope of the least-squares line through (t, log amplitude) for the
/// interleaved max/min half-difference envelope, restricted to the last 80%
/// of the window. Returns 0 when fewer than two usable envelope points exist.
double envelope_growth_rate(const std::vector<double>& x, double t0, double dt, double w_start,
                            double w_end) {
    const auto ext = local_extrema(x, t0, dt);
    std::vector<std::pair<double, double>> env; // (t, amplitude)
    double a_max = 0.0;
    for (std::size_t i = 1; i < ext.size(); ++i) {
        if (ext[i].is_max == ext[i - 1].is_max) continue;
        const double amp = 0.5 * std::abs(ext[i].value - ext[i - 1].value);
        env.emplace_back(0.5 * (ext[i].t + ext[i - 1].t), amp);
        a_max = std::max(a_max, amp);
    }
    const double t_cut = w_start + 0.2 * (w_end - w_start);
    const double floor = 1e-8 * a_max;
    double st = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (const auto& [t, amp] : env) {
        if (t < t_cut || !(amp > floor)) continue;
        st += t;
        sy += std::log(amp);
        ++n;
    }
    if (n < 2) return 0.0;
    const double mt = st / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (const auto& [t, amp] : env) {
        if (t < t_cut || !(amp > floor)) continue;
        num += (t - mt) * (std::log(amp) - my);
        den += (t - mt) * (t - mt);
    }
    return den > 0.0 ? num / den : 0.0;
}

} // namespace

void ThreePhaseRecord::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("three-phase record needs dt > 0");
    const std::size_t n = va.size();
    if (n == 0) throw std::invalid_argument("three-phase record is empty");
    if (vb.size() != n || vc.size() != n || ia.size() != n || ib.size() != n || ic.size() != n)
        throw std::invalid_argument("three-phase channels must have equal length");
}

ModeEstimate dominant_mode(const TimeSeries& series, double t_start, double t_end) {
    if (series.samples.empty() || !(series.dt > 0.0))
        throw std::invalid_argument("dominant_mode needs a non-empty uniform series");
    const double ws = std::max(t_start, series.t0);
    const double we = std::min(t_end, series.t_end());
    if (!(we > ws)) throw WindowTooShort("analysis window does not overlap the series");
    const auto i0 = static_cast<std::size_t>(std::ceil((ws - series.t0) / series.dt - 1e-9));
    const auto i1 = static_cast<std::size_t>(std::floor((we - series.t0) / series.dt + 1e-9));
    if (i1 >= series.size() || i1 < i0 || i1 - i0 + 1 < 16)
        throw WindowTooShort("analysis window holds fewer than 16 samples");
    const std::size_t n = i1 - i0 + 1;

    std::vector<double> x(series.samples.begin() + static_cast<std::ptrdiff_t>(i0),
                          series.samples.begin() + static_cast<std::ptrdiff_t>(i1 + 1));
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    for (double& v : x) v -= mean;

    ModeEstimate est;
    est.window_start = series.t0 + static_cast<double>(i0) * series.dt;
    est.window_end = series.t0 + static_cast<double>(i1) * series.dt;
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    est.peak_to_peak = *hi - *lo;

    // A numerically flat window has nothing but rounding ripple; the Hann
    // window would leak it into the low bins and fake a near-DC mode.
    if (est.peak_to_peak <= 1e-9 * std::max(1.0, std::abs(mean))) {
        est.reliable = false;
        return est;
    }

    std::size_t nfft = 1;
    while (nfft < 4 * n) nfft *= 2;
    std::vector<double> padded(nfft, 0.0);
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (std::size_t j = 0; j < n; ++j)
        padded[j] = x[j] * 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(j) /
                                                 static_cast<double>(n - 1)));
    const std::vector<double> mags = spectrum_magnitudes(padded);

    std::size_t kpk = 1;
    for (std::size_t k = 2; k < mags.size(); ++k)
        if (mags[k] > mags[kpk]) kpk = k;
    std::vector<double> body(mags.begin() + 1, mags.end());
    std::nth_element(body.begin(), body.begin() + static_cast<std::ptrdiff_t>(body.size() / 2),
                     body.end());
    const double median = std::max(body[body.size() / 2], 1e-300);
    const double peak = mags[kpk];
    if (peak <= 0.0) {
        est.reliable = false;
        return est;
    }
    est.prominence_db = 20.0 * std::log10(peak / median);
    est.reliable = est.prominence_db >= 3.0;

    double off = 0.0;
    if (kpk + 1 < mags.size() && mags[kpk - 1] > 0.0 && mags[kpk + 1] > 0.0) {
        const double la = std::log(mags[kpk - 1]);
        const double lb = std::log(peak);
        const double lc = std::log(mags[kpk + 1]);
        const double denom = la - 2.0 * lb + lc;
        if (std::abs(denom) > 1e-300) off = std::clamp(0.5 * (la - lc) / denom, -0.5, 0.5);
    }
    est.frequency_hz = (static_cast<double>(kpk) + off) /
                       (static_cast<double>(nfft) * series.dt);
    est.growth_rate = envelope_growth_rate(x, est.window_start, series.dt, est.window_start,
                                           est.window_end);
    return est;
}

TimeSeries instantaneous_power(const ThreePhaseRecord& rec) {
    rec.validate();
    TimeSeries out;
    out.name = "P_inst";
    out.unit = "";
    out.t0 = 0.0;
    out.dt = rec.dt;
    out.samples.resize(rec.va.size());
    for (std::size_t i = 0; i < rec.va.size(); ++i)
        out.samples[i] = rec.va[i] * rec.ia[i] + rec.vb[i] * rec.ib[i] + rec.vc[i] * rec.ic[i];
    return out;
}

TimeSeries rms_window(const TimeSeries& series, int cycles, double f0_hz) {
    if (!(series.dt > 0.0) || series.samples.empty())
        throw std::invalid_argument("rms_window needs a non-empty uniform series");
    if (cycles < 1 || !(f0_hz > 0.0))
        throw std::invalid_argument("rms_window needs cycles >= 1 and f0 > 0");
    if (1.0 / (f0_hz * series.dt) < 8.0)
        throw WindowTooShort("rms_window needs at least 8 samples per cycle");
    const auto wlen =
        static_cast<std::size_t>(std::llround(static_cast<double>(cycles) / (f0_hz * series.dt)));
    if (wlen < 2 || wlen > series.size())
        throw WindowTooShort("rms window does not fit the series");

    std::vector<double> prefix(series.size() + 1, 0.0);
    for (std::size_t i = 0; i < series.size(); ++i)
        prefix[i + 1] = prefix[i] + series.samples[i] * series.samples[i];

    TimeSeries out;
    out.name = series.name + "_rms";
    out.unit = series.unit;
    out.dt = series.dt;
    out.t0 = series.t0 + static_cast<double>(wlen - 1) * series.dt;
    out.samples.resize(series.size() - wlen + 1);
    for (std::size_t j = 0; j < out.samples.size(); ++j) {
        const double ms = (prefix[j + wlen] - prefix[j]) / static_cast<double>(wlen);
        out.samples[j] = std::sqrt(std::max(ms, 0.0));
    }
    return out;
}

CompareReport compare_runs(const TimeSeries& a, const TimeSeries& b, double t_start,
                           double t_end) {
    CompareReport rep;
    rep.a = dominant_mode(a, t_start, t_end);
    rep.b = dominant_mode(b, t_start, t_end);
    rep.delta_frequency_hz = rep.a.frequency_hz - rep.b.frequency_hz;
    rep.delta_peak_to_peak_rel =
        rep.b.peak_to_peak != 0.0
            ? (rep.a.peak_to_peak - rep.b.peak_to_peak) / rep.b.peak_to_peak
            : 0.0;
    return rep;
}

} // namespace lelosc
