#include "lelosc/timesim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lelosc/errors.hpp"

namespace lelosc {

namespace {

constexpr double kDivergenceLimit = 1e6;

/// AC power delivered to the load at power-factor angle m = delta_v - delta.
/// The trailing terms vanish at equilibrium (m = 0, w = id); during
/// synchronizing transients they carry the reactive-drop energy exchange
/// between the terminal and the angle lag.
double ac_power(double id, double w, double v, double m, double xg) {
    const double g = xg * id;
    return id * (v * std::cos(m) + (1.0 + v) * g * std::sin(m)) +
           ((1.0 + v) / v) * g * g * (id - w);
}

using StateVec = std::array<double, 5>; // vdc, xi, id, delta, w

StateVec axpy(const StateVec& y, const StateVec& k, double h) {
    StateVec out;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
    return out;
}

} // namespace

void Scenario::validate() const {
    params.validate();
    if (!std::isfinite(p_base_mw) || !(p_base_mw > 0.0))
        throw std::invalid_argument("p_base_mw must be positive");
    if (!std::isfinite(t_end) || !(t_end > 0.0))
        throw std::invalid_argument("t_end must be positive");
    if (!std::isfinite(dt) || !(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (dt > t_end) throw std::invalid_argument("dt must not exceed t_end");
    double fastest = 2.0 * params.tau_dc;
    if (params.tau_i > 0.0) fastest = std::min(fastest, params.tau_i);
    if (params.tau_sync > 0.0) fastest = std::min(fastest, params.tau_sync);
    if (dt > fastest / 20.0)
        throw std::invalid_argument("dt must be at most 1/20 of the fastest time constant");
    if (!std::isfinite(i_limit) || !(i_limit > 0.0))
        throw std::invalid_argument("i_limit must be positive");
    if (pdc_profile.empty()) throw std::invalid_argument("pdc_profile must not be empty");
    if (pdc_profile.front().first != 0.0)
        throw std::invalid_argument("pdc_profile must start at t = 0");
    double prev = -1.0;
    for (const auto& [t, p] : pdc_profile) {
        if (!std::isfinite(t) || !std::isfinite(p))
            throw std::invalid_argument("pdc_profile entries must be finite");
        if (t <= prev) throw std::invalid_argument("pdc_profile times must be strictly increasing");
        if (p < 0.0) throw std::invalid_argument("pdc_profile powers must be nonnegative");
        prev = t;
    }
}

double Scenario::pdc_at(double t) const {
    if (pdc_profile.empty()) return 0.0;
    if (t <= pdc_profile.front().first) return pdc_profile.front().second;
    if (t >= pdc_profile.back().first) return pdc_profile.back().second;
    for (std::size_t i = 1; i < pdc_profile.size(); ++i) {
        const auto& [t1, p1] = pdc_profile[i];
        if (t <= t1) {
            const auto& [t0, p0] = pdc_profile[i - 1];
            return p0 + (p1 - p0) * (t - t0) / (t1 - t0);
        }
    }
    return pdc_profile.back().second;
}

NetworkPoint network_solve(double id, double delta, double vg, double xg) {
    const double g = xg * id;
    const double re = vg + g * std::sin(delta);
    const double im = -g * std::cos(delta);
    NetworkPoint np;
    np.v = std::hypot(re, im);
    np.delta_v = std::atan2(im, re);
    if (np.v < kCollapseVoltage)
        throw VoltageCollapse("AC bus voltage collapsed below 0.2 pu");
    return np;
}

double max_transfer_power(double vg, double xg) {
    if (!(vg > 0.0) || !(xg > 0.0))
        throw std::invalid_argument("max_transfer_power needs vg > 0 and xg > 0");
    return vg * vg / (2.0 * xg);
}

double rated_power(double vg, double xg) {
    if (!(vg > 0.0) || xg < 0.0 || !(xg < vg))
        throw std::invalid_argument("rated_power needs 0 <= xg < vg");
    return std::sqrt(vg * vg - xg * xg);
}

double equilibrium_current(double pdc, double vg, double xg) {
    if (!(vg > 0.0) || xg < 0.0) throw std::invalid_argument("network needs vg > 0 and xg >= 0");
    if (!(pdc >= 0.0)) throw std::invalid_argument("load power must be nonnegative");
    if (pdc == 0.0) return 0.0;
    if (xg == 0.0) return pdc / vg;
    const double p_max = max_transfer_power(vg, xg);
    if (pdc > p_max) throw InfeasibleLoad("requested DC load exceeds maximum transferable power");
    const double id_max = vg / (xg * std::numbers::sqrt2);
    if (pdc == p_max) return id_max;
    const auto delivered = [&](double id) {
        const double g = xg * id;
        return id * std::sqrt(vg * vg - g * g);
    };
    double lo = 0.0;
    double hi = id_max;
    for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (delivered(mid) < pdc)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

SimState init_equilibrium(const Scenario& sc) {
    sc.validate();
    const FeedbackParams& p = sc.params;
    if (!(p.ki > 0.0))
        throw std::invalid_argument("equilibrium initialization needs integral gain ki > 0");
    const double pdc0 = sc.pdc_at(0.0);
    const double id = equilibrium_current(pdc0, p.vg, p.xg);
    if (id > sc.i_limit)
        throw InfeasibleLoad("initial load needs more current than the reference clamp allows");
    const double g = p.xg * id;
    SimState s;
    s.vdc = p.vdc_ref;
    s.xi = id / p.ki;
    s.id = id;
    s.delta = -std::atan2(g, std::sqrt(p.vg * p.vg - g * g));
    s.w = id;
    const NetworkPoint np = network_solve(id, s.delta, p.vg, p.xg);
    s.v = np.v;
    s.delta_v = np.delta_v;
    s.p_ac = ac_power(id, s.w, np.v, np.delta_v - s.delta, p.xg);
    return s;
}

SimResult simulate(const Scenario& sc) {
    sc.validate();
    const FeedbackParams& p = sc.params;
    if (!(p.tau_i > 0.0) || !(p.tau_sync > 0.0))
        throw std::invalid_argument("simulate needs tau_i > 0 and tau_sync > 0");

    const SimState s0 = init_equilibrium(sc);
    StateVec y = {s0.vdc, s0.xi, s0.id, s0.delta, s0.w};

    const auto i_ref = [&](double vdc, double xi) {
        return std::clamp(p.kp * (p.vdc_ref - vdc) + p.ki * xi, 0.0, sc.i_limit);
    };

    const auto rhs = [&](double t, const StateVec& s) -> StateVec {
        const NetworkPoint np = network_solve(s[2], s[3], p.vg, p.xg);
        const double m = np.delta_v - s[3];
        const double pac = ac_power(s[2], s[4], np.v, m, p.xg);
        const double err = p.vdc_ref - s[0];
        const double raw = p.kp * err + p.ki * s[1];
        const bool frozen = (raw > sc.i_limit && err > 0.0) || (raw < 0.0 && err < 0.0);
        return {(pac - sc.pdc_at(t)) / (2.0 * p.tau_dc * s[0]),
                frozen ? 0.0 : err,
                (std::clamp(raw, 0.0, sc.i_limit) - s[2]) / p.tau_i,
                m / p.tau_sync,
                (s[2] - s[4]) / kWashoutTau};
    };

    const long long n_steps = std::llround(sc.t_end / sc.dt);
    SimResult res;
    const char* names[] = {"P_ac", "V", "V_dc", "i_d", "i_d_ref", "delta", "delta_v", "w"};
    const char* units[] = {"pu", "pu", "pu", "pu", "pu", "rad", "rad", "pu"};
    std::array<std::vector<double>, 8> chans;
    for (auto& c : chans) c.reserve(static_cast<std::size_t>(n_steps) + 1);

    double t = 0.0;
    try {
        for (long long step = 0; step <= n_steps; ++step) {
            t = static_cast<double>(step) * sc.dt;
            const NetworkPoint np = network_solve(y[2], y[3], p.vg, p.xg);
            const double m = np.delta_v - y[3];
            chans[0].push_back(ac_power(y[2], y[4], np.v, m, p.xg));
            chans[1].push_back(np.v);
            chans[2].push_back(y[0]);
            chans[3].push_back(y[2]);
            chans[4].push_back(i_ref(y[0], y[1]));
            chans[5].push_back(y[3]);
            chans[6].push_back(np.delta_v);
            chans[7].push_back(y[4]);
            if (step == n_steps) break;

            const double h = sc.dt;
            const StateVec k1 = rhs(t, y);
            const StateVec k2 = rhs(t + 0.5 * h, axpy(y, k1, 0.5 * h));
            const StateVec k3 = rhs(t + 0.5 * h, axpy(y, k2, 0.5 * h));
            const StateVec k4 = rhs(t + h, axpy(y, k3, h));
            for (std::size_t i = 0; i < y.size(); ++i)
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

            for (double s : y) {
                if (!std::isfinite(s) || std::abs(s) > kDivergenceLimit) {
                    res.diverged = true;
                    res.fault_time = t + h;
                    break;
                }
            }
            if (res.diverged) break;
        }
    } catch (const VoltageCollapse&) {
        res.collapsed = true;
        res.fault_time = t;
    }

    for (std::size_t i = 0; i < chans.size(); ++i) {
        TimeSeries ts;
        ts.name = names[i];
        ts.unit = units[i];
        ts.t0 = 0.0;
        ts.dt = sc.dt;
        ts.samples = std::move(chans[i]);
        res.signals.emplace(ts.name, std::move(ts));
    }
    return res;
}

TimeSeries to_mw(const TimeSeries& series, double p_base_mw) {
    if (!(p_base_mw > 0.0)) throw std::invalid_argument("p_base_mw must be positive");
    TimeSeries out = series;
    out.unit = "MW";
    for (double& s : out.samples) s *= p_base_mw;
    return out;
}

} // namespace lelosc
