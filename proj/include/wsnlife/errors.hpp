#pragma once

#include <stdexcept>
#include <string>

namespace wsnlife {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flow conservation system is singular, or routing mass never reaches the base.
class SingularFlow : public Error {
public:
    using Error::Error;
};

/// The source has no usable out-neighbour (or the base is unreachable).
class NoRoute : public Error {
public:
    using Error::Error;
};

class DegenerateSource : public Error {
public:
    using Error::Error;
};

/// The damped nu fixed point was not met within the iteration budget.
class NuDiverged : public Error {
public:
    NuDiverged(const std::string& what, double last_nu, double last_residual)
        : Error(what), last_nu(last_nu), last_residual(last_residual) {}
    double last_nu;
    double last_residual;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

/// Caller violated a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace wsnlife
