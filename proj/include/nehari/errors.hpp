#pragma once

#include <stdexcept>
#include <string>

namespace nehari {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// State is numerically zero where a nonzero state is required.
struct ZeroStateError : Error {
    explicit ZeroStateError(const std::string& msg = "state is numerically zero") : Error(msg) {}
};

/// Energy or sign data inconsistent with the active sign case.
struct CaseMismatchError : Error {
    explicit CaseMismatchError(const std::string& msg) : Error(msg) {}
};

/// An iterative solve failed to reach its tolerance.
struct NoConvergenceError : Error {
    explicit NoConvergenceError(const std::string& msg) : Error(msg) {}
};

/// State does not satisfy the Nehari constraint within tolerance.
struct NotOnNehariError : Error {
    explicit NotOnNehariError(const std::string& msg) : Error(msg) {}
};

/// Two states live on different grids.
struct GridMismatchError : Error {
    explicit GridMismatchError(const std::string& msg) : Error(msg) {}
};

/// Curve tail too short or degenerate for an asymptotic fit.
struct InsufficientTailError : Error {
    explicit InsufficientTailError(const std::string& msg) : Error(msg) {}
};

/// Invalid configuration (bad exponent window, sign pattern, sweep range, ...).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace nehari
