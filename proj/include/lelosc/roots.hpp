#pragma once

#include <complex>
#include <vector>

#include "lelosc/polynomial.hpp"
#include "lelosc/transfer_function.hpp"

namespace lelosc {

/// All complex roots of p (with multiplicity), found by Aberth-Ehrlich
/// simultaneous iteration on the monic-normalized polynomial. Complex roots
/// are returned in exact conjugate pairs; near-real roots are snapped to the
/// real axis at 1e-8 relative. Accepted when |p(r)| / max(1,|r|)^deg < 1e-8
/// for the monic p; throws ConvergenceFailure after 1000 sweeps.
[[nodiscard]] std::vector<std::complex<double>> poly_roots(const Polynomial& p);

/// Poles of a transfer function: roots of its denominator.
[[nodiscard]] std::vector<std::complex<double>> poles(const TransferFunction& g);

} // namespace lelosc
