#pragma once

#include <stdexcept>
#include <string>

namespace bjc {

// Base class for every error thrown by this library.  Catching bjc::Error is
// sufficient to intercept any failure that originates here rather than in the
// standard library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A scalar argument is out of range or otherwise physically meaningless
// (negative decay rate, zero-dimensional Fock space, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Two objects built over different Hilbert-space layouts were combined, or an
// operator's matrix dimension does not match its declared layout.
class LayoutError : public Error {
public:
    using Error::Error;
};

// A state failed a physicality check (trace, Hermiticity, positivity).
class StateError : public Error {
public:
    using Error::Error;
};

// A linear solve or time integration finished but did not meet its residual
// or drift tolerance.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_ = 0.0;
};

// The stationarity equation is singular: without at least one dissipative
// channel the steady state is not unique.
class SingularSystemError : public Error {
public:
    using Error::Error;
};

// A correlation function is undefined for the given state (vanishing mean
// occupation).
class UndefinedCorrelationError : public Error {
public:
    using Error::Error;
};

// A sweep specification is invalid or too many grid points failed.
class SweepError : public Error {
public:
    using Error::Error;
};

// A configuration file or command line could not be interpreted.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace bjc
