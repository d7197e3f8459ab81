#pragma once

#include <stdexcept>
#include <string>

namespace aprs {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct SymmetryError : std::runtime_error {
    explicit SymmetryError(const std::string& what) : std::runtime_error(what) {}
};

struct LatticeMismatchError : std::runtime_error {
    explicit LatticeMismatchError(const std::string& what) : std::runtime_error(what) {}
};

struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct UncalibratedError : std::runtime_error {
    explicit UncalibratedError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a simulation leaves the representable range (|coeff| > 1e12 or NaN).
/// Carries a structured report of the last valid step.
struct BlowUpError : std::runtime_error {
    BlowUpError(const std::string& what, long step, double time, double max_coeff)
        : std::runtime_error(what), step(step), time(time), max_coeff(max_coeff) {}
    long step = -1;
    double time = 0.0;
    double max_coeff = 0.0;
};

}  // namespace aprs
