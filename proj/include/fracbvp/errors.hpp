#pragma once

#include <stdexcept>
#include <string>

namespace fracbvp {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A sampled function is not resolved finely enough for the requested stencil.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Quadrature did not reach the requested tolerance within its node budget.
/// Carries the best available estimate so callers can decide what to do.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double best_estimate, double error_estimate)
        : Error(what), best_estimate(best_estimate), error_estimate(error_estimate) {}

    double best_estimate;
    double error_estimate;
};

/// Malformed or inadmissible problem description (parse errors, (H1)/(H2)
/// violations, invariant failures at assembly).
class SpecError : public Error {
public:
    using Error::Error;
};

/// An API contract was violated (missing channel, certificate misuse,
/// classification precondition not met).
class ContractError : public Error {
public:
    using Error::Error;
};

/// Certificate construction failed (e.g. a growth threshold was not found
/// below the scan cap).
class CertificateError : public Error {
public:
    using Error::Error;
};

} // namespace fracbvp
