#include "lelosc/lelmodel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lelosc/bode.hpp"
#include "lelosc/config.hpp"
#include "lelosc/errors.hpp"
#include "lelosc/roots.hpp"
#include "lelosc/scan.hpp"

namespace lelosc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double floored_db(const TransferFunction& g, double f) {
    const double mag = std::abs(freq_eval(g, f));
    if (mag <= 1e-15) return kMagnitudeFloorDb;
    return std::max(20.0 * std::log10(mag), kMagnitudeFloorDb);
}

} // namespace

void FeedbackParams::validate() const {
    const double vals[] = {kp, ki, tau_dc, tau_i, tau_sync, xg, id0, vg, vdc_ref};
    for (double v : vals)
        if (!std::isfinite(v)) throw std::invalid_argument("feedback params must be finite");
    if (kp < 0.0 || ki < 0.0) throw std::invalid_argument("controller gains must be nonnegative");
    if (!(kp + ki > 0.0)) throw std::invalid_argument("controller must have some gain");
    if (!(tau_dc > 0.0)) throw std::invalid_argument("tau_dc must be positive");
    if (tau_i < 0.0) throw std::invalid_argument("tau_i must be nonnegative");
    if (tau_sync < 0.0) throw std::invalid_argument("tau_sync must be nonnegative");
    if (xg < 0.0) throw std::invalid_argument("xg must be nonnegative");
    if (!(xg * id0 >= 0.0) || !(xg * id0 < vg))
        throw std::invalid_argument("operating point needs 0 <= id0*xg < vg");
    if (!(vdc_ref > 0.0)) throw std::invalid_argument("vdc_ref must be positive");
}

FeedbackParams fast_dvc_params() {
    FeedbackParams p;
    p.kp = 2.8;
    p.ki = 2000.0;
    p.tau_dc = 0.0377;
    p.tau_i = 0.001;
    p.tau_sync = kCalibratedTauSync;
    p.xg = 0.65;
    p.id0 = 1.0;
    return p;
}

FeedbackParams slow_dvc_params() {
    FeedbackParams p = fast_dvc_params();
    p.kp = 10.0;
    p.ki = 1.0 / 0.0063;
    return p;
}

const char* to_string(StabilityClass cls) {
    switch (cls) {
    case StabilityClass::stable: return "stable";
    case StabilityClass::marginal: return "marginal";
    case StabilityClass::unstable: return "unstable";
    }
    return "unknown";
}

TransferFunction build_plant(const FeedbackParams& p) {
    p.validate();
    return {Polynomial{1.0}, Polynomial{2.0 * p.tau_dc, 0.0}};
}

TransferFunction build_gdvc(const FeedbackParams& p, bool include_current_lag) {
    p.validate();
    const Polynomial num{p.kp, p.ki};
    if (include_current_lag)
        return {num, Polynomial{2.0 * p.tau_dc * p.tau_i, 2.0 * p.tau_dc, p.kp, p.ki}};
    return {num, Polynomial{2.0 * p.tau_dc, p.kp, p.ki}};
}

TransferFunction build_gsync(const FeedbackParams& p) {
    p.validate();
    return {Polynomial{1.0}, Polynomial{p.tau_sync, 1.0}};
}

TransferFunction build_loop_gain(const FeedbackParams& p) {
    p.validate();
    return tf_scale(tf_mul(build_gdvc(p, true), build_gsync(p)), -p.gain());
}

Polynomial closed_loop_char(const FeedbackParams& p, double k) {
    p.validate();
    if (!(k >= 0.0)) throw std::invalid_argument("loop gain k must be nonnegative");
    const Polynomial dvc_den{2.0 * p.tau_dc * p.tau_i, 2.0 * p.tau_dc, p.kp, p.ki};
    if (k == 0.0) return dvc_den;
    const Polynomial sync_den{p.tau_sync, 1.0};
    const Polynomial ctrl_num{p.kp, p.ki};
    return dvc_den * sync_den + ctrl_num.scaled(k);
}

TransferFunction build_closed_loop(const FeedbackParams& p, LoopOutput output) {
    p.validate();
    const double k = p.gain();
    const Polynomial den = closed_loop_char(p, k);
    const Polynomial ctrl_num{p.kp, p.ki};
    const Polynomial lag_s{p.tau_i, 1.0, 0.0}; // s*(tau_i*s + 1)
    const Polynomial sync_den{p.tau_sync, 1.0};
    switch (output) {
    case LoopOutput::dc_voltage:
        if (k == 0.0) return {lag_s.scaled(-1.0), den};
        return {(lag_s * sync_den).scaled(-1.0), den};
    case LoopOutput::current:
        if (k == 0.0) return {ctrl_num, den};
        return {ctrl_num * sync_den, den};
    case LoopOutput::ac_voltage:
        return {ctrl_num.scaled(-p.xg * p.xg * p.id0), den};
    }
    throw std::invalid_argument("unknown loop output");
}

double stability_margin_eps(const FeedbackParams& p) {
    const ResonantPeak peak = resonant_frequency(build_gdvc(p, true), 1.0, 100.0);
    return 1e-6 * kTwoPi * peak.frequency_hz;
}

StabilityVerdict classify_at_gain(const FeedbackParams& p, double k,
                                  std::optional<double> margin_eps) {
    const double eps = margin_eps ? *margin_eps : stability_margin_eps(p);
    const auto ps = poles({Polynomial{1.0}, closed_loop_char(p, k)});
    if (ps.empty()) throw std::invalid_argument("characteristic polynomial has no roots");
    // poles are sorted by (Re, Im); the last entry is the dominant one and,
    // within a conjugate pair, the upper-half-plane member
    std::complex<double> dom = ps.back();
    if (dom.imag() < 0.0) dom = std::conj(dom);
    StabilityVerdict v;
    v.dominant_pole = dom;
    v.oscillation_frequency_hz = std::abs(dom.imag()) / kTwoPi;
    const double mod = std::abs(dom);
    v.damping_ratio = mod > 0.0 ? -dom.real() / mod : 0.0;
    v.margin_eps = eps;
    const double re = dom.real();
    if (re < -eps)
        v.cls = StabilityClass::stable;
    else if (re <= eps)
        v.cls = StabilityClass::marginal;
    else
        v.cls = StabilityClass::unstable;
    return v;
}

StabilityVerdict classify_stability(const FeedbackParams& p) {
    return classify_at_gain(p, p.gain());
}

double critical_gain(const FeedbackParams& p, double k_lo, double k_hi) {
    p.validate();
    if (!(k_lo >= 0.0) || !(k_hi > k_lo))
        throw BracketInvalid("critical_gain needs 0 <= k_lo < k_hi");
    const double eps = stability_margin_eps(p);
    if (classify_at_gain(p, k_lo, eps).cls != StabilityClass::stable)
        throw BracketInvalid("critical_gain: loop not stable at k_lo");
    if (classify_at_gain(p, k_hi, eps).cls == StabilityClass::stable)
        throw BracketInvalid("critical_gain: loop stable at k_hi");
    double a = k_lo;
    double b = k_hi;
    while (b - a >= 1e-4) {
        const double mid = 0.5 * (a + b);
        if (classify_at_gain(p, mid, eps).dominant_pole.real() < 0.0)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

ResonantPeak resonant_frequency(const TransferFunction& g, double f_lo, double f_hi) {
    if (!(f_lo > 0.0) || !(f_hi > f_lo))
        throw std::invalid_argument("resonant_frequency needs 0 < f_lo < f_hi");
    const auto freqs = log_grid(f_lo, f_hi, 2000);
    std::size_t imax = 0;
    double max_db = -std::numeric_limits<double>::infinity();
    double min_db = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        const double db = floored_db(g, freqs[i]);
        if (db > max_db) {
            max_db = db;
            imax = i;
        }
        min_db = std::min(min_db, db);
    }
    if (max_db - min_db < 0.1) return {f_lo, floored_db(g, f_lo), true};

    double a = freqs[imax == 0 ? 0 : imax - 1];
    double b = freqs[std::min(imax + 1, freqs.size() - 1)];
    constexpr double kGolden = 0.6180339887498949;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = floored_db(g, c);
    double fd = floored_db(g, d);
    while (b - a > 0.01) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = floored_db(g, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = floored_db(g, d);
        }
    }
    const double f_peak = 0.5 * (a + b);
    return {f_peak, floored_db(g, f_peak), false};
}

SyncCalibration calibrate_sync(const FeedbackParams& p, double k_unstable, double k_stable,
                               Exec exec) {
    p.validate();
    if (!(k_stable >= 0.0) || !(k_stable < k_unstable))
        throw BracketInvalid("calibrate_sync needs 0 <= k_stable < k_unstable");
    const auto taus = log_grid(0.001, 0.05, 200);
    const auto rows = sync_scan(p, taus, k_unstable, k_stable, exec);
    std::size_t best = rows.size();
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].feasible) continue;
        const double err = std::abs(rows[i].f_osc_hz - 26.0);
        if (err < best_err) {
            best_err = err;
            best = i;
        }
    }
    if (best == rows.size())
        throw NoFeasibleSync("no synchronizing lag in [0.001, 0.05] s separates the two gains");
    return {rows[best].tau_sync, rows[best].f_osc_hz};
}

} // namespace lelosc
