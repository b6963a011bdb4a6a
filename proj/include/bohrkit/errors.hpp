#pragma once

#include <stdexcept>
#include <string>

namespace bohr {

// Largest admissible |z| or r anywhere in the library.
inline constexpr double kMaxRadius = 1.0 - 1e-6;

/// Argument outside the mathematical domain of an operation (|z| too large,
/// a outside [0,1), negative weight, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller-side contract violation that is not a domain issue (a0 != 0 for a
/// Schwarz-only functional, delta out of range, empty grids).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A certified truncation remainder exceeded the accuracy budget.
class AccuracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No sign change of the radius function on the evaluation domain.
class NoRootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The radius function is nonnegative just past the radius, so sharpness
/// cannot be tested there.
class NotFalsifiableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Witness search exhausted without exceeding the bound.
class NoWitnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require_radius(double r, const char* what)
{
    if (!(r >= 0.0 && r <= kMaxRadius)) {
        throw DomainError(std::string(what) + ": radius " + std::to_string(r) +
                          " outside [0, 1-1e-6]");
    }
}

}  // namespace bohr
