#pragma once

#include <stdexcept>
#include <string>

namespace lelosc {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Feedback closure denominator collapsed to the zero polynomial.
class DegenerateLoop : public Error {
public:
    using Error::Error;
};

/// Frequency response requested on (numerically) an imaginary-axis pole.
class PoleOnAxis : public Error {
public:
    using Error::Error;
};

/// Root solver exceeded its iteration cap without meeting the residual bound.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

/// State-space realization requested for a TF with deg(num) > deg(den).
class ImproperSystem : public Error {
public:
    using Error::Error;
};

/// Bisection bracket does not satisfy the required verdicts at its ends.
class BracketInvalid : public Error {
public:
    using Error::Error;
};

/// No point of the synchronizing-lag scan satisfied the calibration constraints.
class NoFeasibleSync : public Error {
public:
    using Error::Error;
};

/// AC bus voltage magnitude fell below the collapse threshold.
class VoltageCollapse : public Error {
public:
    explicit VoltageCollapse(const std::string& what, double time_s = 0.0)
        : Error(what), time_s(time_s) {}
    double time_s;
};

/// A simulation state became non-finite.
class NumericalDivergence : public Error {
public:
    using Error::Error;
};

/// Requested DC load power exceeds the maximum transferable power.
class InfeasibleLoad : public Error {
public:
    using Error::Error;
};

/// Sliding window does not fit the series or the sampling rate.
class WindowTooShort : public Error {
public:
    using Error::Error;
};

/// Malformed CSV input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent configuration document.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace lelosc
