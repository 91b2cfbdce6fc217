#pragma once

#include <stdexcept>
#include <string>

namespace stifflab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation outside a profile's domain (e.g. t < domain_start).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A value left the representable range (magnitude > 1e308 or non-finite).
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A theorem/corollary hypothesis does not hold for the given inputs.
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// Numerical procedure failed (quadrature, bracketing, linear solve).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Integration exceeded the configured step budget.
class MaxStepsExceeded : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Adaptive step size collapsed below resolvable resolution.
class StepUnderflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace stifflab
