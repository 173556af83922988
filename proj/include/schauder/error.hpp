#pragma once

#include <stdexcept>
#include <string>

namespace schauder {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates an operation's precondition (bad alpha, tau <= 0, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A query point or region lies outside the domain a value is defined on.
class OutOfDomain : public Error {
public:
    using Error::Error;
};

/// An evaluator produced NaN or infinity.
class NonFinite : public Error {
public:
    using Error::Error;
};

/// Derivative data was requested that the function does not carry.
class MissingDerivative : public Error {
public:
    using Error::Error;
};

/// The requested integral does not converge.
class Divergent : public Error {
public:
    using Error::Error;
};

/// Quadrature refinement disagreed by more than the declared tolerance.
class NonConvergent : public Error {
public:
    using Error::Error;
};

/// A caller-supplied bound or assumption was found to be false.
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

}  // namespace schauder
