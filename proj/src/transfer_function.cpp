#include "lelosc/transfer_function.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lelosc/errors.hpp"

namespace lelosc {

TransferFunction::TransferFunction(Polynomial numerator, Polynomial denominator)
    : num(std::move(numerator)), den(std::move(denominator)) {
    if (den.is_zero()) throw std::invalid_argument("transfer function denominator is zero");
}

TransferFunction tf_mul(const TransferFunction& a, const TransferFunction& b) {
    return {a.num * b.num, a.den * b.den};
}

TransferFunction tf_feedback(const TransferFunction& g, const TransferFunction& h) {
    Polynomial num = g.num * h.den;
    Polynomial den = g.den * h.den + g.num * h.num;
    if (den.is_zero()) throw DegenerateLoop("1 + g*h is identically zero");
    return {std::move(num), std::move(den)};
}

TransferFunction tf_scale(const TransferFunction& g, double factor) {
    return {g.num.scaled(factor), g.den};
}

std::complex<double> freq_eval(const TransferFunction& g, double f_hz) {
    if (f_hz <= 0.0) throw std::invalid_argument("freq_eval requires f > 0");
    const std::complex<double> s(0.0, 2.0 * std::numbers::pi * f_hz);
    const std::complex<double> d = g.den.eval(s);
    if (std::abs(d) < 1e-300)
        throw PoleOnAxis("denominator vanishes at f = " + std::to_string(f_hz) + " Hz");
    return g.num.eval(s) / d;
}

} // namespace lelosc
