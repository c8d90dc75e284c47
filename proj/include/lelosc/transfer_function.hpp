#pragma once

#include <complex>

#include "lelosc/polynomial.hpp"

namespace lelosc {

/// Rational transfer function in the Laplace variable s. The denominator is
/// never the zero polynomial; no pole-zero cancellation is ever performed.
struct TransferFunction {
    Polynomial num;
    Polynomial den;

    TransferFunction() : num(), den({1.0}) {}
    TransferFunction(Polynomial numerator, Polynomial denominator);

    [[nodiscard]] static TransferFunction constant(double value) {
        return {Polynomial::constant(value), Polynomial::constant(1.0)};
    }

    /// Raw rational evaluation at a complex s (no pole guard).
    [[nodiscard]] std::complex<double> eval(std::complex<double> s) const {
        return num.eval(s) / den.eval(s);
    }
};

/// Product a*b: numerators and denominators multiply, no cancellation.
[[nodiscard]] TransferFunction tf_mul(const TransferFunction& a, const TransferFunction& b);

/// Closes g around negative feedback h: g/(1+g*h) as a single rational
/// function. Throws DegenerateLoop if the denominator collapses to zero.
[[nodiscard]] TransferFunction tf_feedback(const TransferFunction& g, const TransferFunction& h);

/// Scales a transfer function by a real factor.
[[nodiscard]] TransferFunction tf_scale(const TransferFunction& g, double factor);

/// Evaluates g at s = j*2*pi*f. Throws PoleOnAxis if |den| < 1e-300 there.
[[nodiscard]] std::complex<double> freq_eval(const TransferFunction& g, double f_hz);

} // namespace lelosc
