#pragma once

#include <vector>

#include "lelosc/timeseries.hpp"
#include "lelosc/transfer_function.hpp"

namespace lelosc {

/// Controllable-canonical single-input single-output realization.
/// A is the companion matrix of the monic denominator (stored as its bottom
/// row), B = e_n, C holds the reduced numerator coefficients, D the direct
/// feedthrough. n = 0 represents a pure gain.
struct StateSpaceRealization {
    std::size_t n = 0;
    std::vector<double> a_bottom; ///< -den coefficients a_0..a_{n-1} of the monic den
    std::vector<double> c;        ///< output row, ascending state index
    double d = 0.0;

    /// Frequency response of the realization at complex s.
    [[nodiscard]] std::complex<double> eval(std::complex<double> s) const;
};

/// Builds the controllable canonical form. Throws ImproperSystem if
/// deg(num) > deg(den).
[[nodiscard]] StateSpaceRealization to_state_space(const TransferFunction& g);

/// Step response sampled at t = 0, dt, ..., ~t_end.
struct StepResult {
    TimeSeries y;
    bool diverged = false; ///< |y| exceeded 1e12; samples hold the prefix
};

/// Unit-step response via fixed-step RK4 on the canonical realization.
[[nodiscard]] StepResult step_response(const TransferFunction& g, double t_end, double dt);

} // namespace lelosc
