#include "lelosc/state_space.hpp"

#include <cmath>
#include <stdexcept>

#include "lelosc/errors.hpp"

namespace lelosc {

namespace {

/// State derivative of the companion-form system driven by input u.
void deriv(const StateSpaceRealization& ss, const std::vector<double>& x, double u,
           std::vector<double>& dx) {
    const std::size_t n = ss.n;
    for (std::size_t i = 0; i + 1 < n; ++i) dx[i] = x[i + 1];
    double acc = u;
    for (std::size_t i = 0; i < n; ++i) acc -= ss.a_bottom[i] * x[i];
    dx[n - 1] = acc;
}

double output(const StateSpaceRealization& ss, const std::vector<double>& x, double u) {
    double y = ss.d * u;
    for (std::size_t i = 0; i < ss.n; ++i) y += ss.c[i] * x[i];
    return y;
}

} // namespace

std::complex<double> StateSpaceRealization::eval(std::complex<double> s) const {
    // Companion-form identity: H(s) = (sum c_i s^i) / (s^n + sum a_i s^i) + d.
    if (n == 0) return d;
    std::complex<double> num = 0.0;
    std::complex<double> den = 0.0;
    std::complex<double> pw = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += c[i] * pw;
        den += a_bottom[i] * pw;
        pw *= s;
    }
    den += pw;
    return num / den + d;
}

StateSpaceRealization to_state_space(const TransferFunction& g) {
    if (g.num.degree() > g.den.degree() && !g.num.is_zero())
        throw ImproperSystem("numerator degree exceeds denominator degree");

    const std::size_t n = g.den.degree();
    const double lead = g.den.leading();

    StateSpaceRealization ss;
    ss.n = n;
    if (n == 0) {
        ss.d = g.num.coeff(0) / lead;
        return ss;
    }

    std::vector<double> num_lo(n + 1, 0.0); // numerator/lead, ascending powers
    for (std::size_t i = 0; i <= n; ++i) num_lo[i] = g.num.coeff(i) / lead;
    std::vector<double> den_lo(n + 1, 0.0); // monic denominator, ascending powers
    for (std::size_t i = 0; i <= n; ++i) den_lo[i] = g.den.coeff(i) / lead;

    ss.d = num_lo[n];
    ss.a_bottom.assign(den_lo.begin(), den_lo.begin() + static_cast<long>(n));
    ss.c.resize(n);
    for (std::size_t i = 0; i < n; ++i) ss.c[i] = num_lo[i] - ss.d * den_lo[i];
    return ss;
}

StepResult step_response(const TransferFunction& g, double t_end, double dt) {
    if (t_end <= 0.0 || dt <= 0.0) throw std::invalid_argument("step_response needs t_end, dt > 0");
    const StateSpaceRealization ss = to_state_space(g);
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));

    StepResult result;
    result.y.name = "step_response";
    result.y.t0 = 0.0;
    result.y.dt = dt;
    result.y.samples.reserve(steps + 1);

    constexpr double kDivergenceLimit = 1e12;
    const std::size_t n = ss.n;
    std::vector<double> x(n, 0.0);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

    for (std::size_t i = 0; i <= steps; ++i) {
        const double y = output(ss, x, 1.0);
        if (!std::isfinite(y) || std::abs(y) > kDivergenceLimit) {
            result.diverged = true;
            break;
        }
        result.y.samples.push_back(y);
        if (i == steps || n == 0) continue;

        deriv(ss, x, 1.0, k1);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * dt * k1[j];
        deriv(ss, tmp, 1.0, k2);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * dt * k2[j];
        deriv(ss, tmp, 1.0, k3);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + dt * k3[j];
        deriv(ss, tmp, 1.0, k4);
        for (std::size_t j = 0; j < n; ++j)
            x[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    return result;
}

} // namespace lelosc
