#pragma once

#include <stdexcept>
#include <string>

namespace orientrds {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument, shape mismatch or unusable parameter combination.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// File could not be read, written or parsed.
class IoError : public Error {
public:
    using Error::Error;
};

/// An explicit step left the admissible range of the initial data.
class InstabilityError : public Error {
public:
    InstabilityError(const std::string& what, double tau, long step)
        : Error(what), tau_(tau), step_(step) {}

    double tau() const noexcept { return tau_; }
    long step() const noexcept { return step_; }

private:
    double tau_;
    long step_;
};

}  // namespace orientrds
