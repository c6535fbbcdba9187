#pragma once

#include <stdexcept>
#include <string>

namespace qaction {

// Base of every error thrown by the library. `invariant()` names the violated
// contract so the CLI can report it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string invariant, const std::string& what)
        : std::runtime_error(what), invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

// Caller handed us something outside an operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public DomainError {
public:
    explicit DimensionMismatch(const std::string& what) : DomainError("dimension-match", what) {}
};

class NotHermitian : public DomainError {
public:
    explicit NotHermitian(const std::string& what) : DomainError("hermiticity", what) {}
};

class OverCap : public DomainError {
public:
    explicit OverCap(const std::string& what) : DomainError("full-space-cap", what) {}
};

class WrongVariant : public DomainError {
public:
    explicit WrongVariant(const std::string& what) : DomainError("hamiltonian-variant", what) {}
};

class StepResolution : public DomainError {
public:
    explicit StepResolution(const std::string& what) : DomainError("step-resolution", what) {}
};

class Overflow : public DomainError {
public:
    explicit Overflow(const std::string& what) : DomainError("integer-width", what) {}
};

// A numerical contract failed at run time (norm drift, missing flip, ...).
class NumericalContract : public Error {
public:
    using Error::Error;
};

class InvalidTrace : public NumericalContract {
public:
    explicit InvalidTrace(const std::string& what) : NumericalContract("norm-drift", what) {}
};

class NoFlip : public NumericalContract {
public:
    NoFlip(double observed_max, const std::string& what)
        : NumericalContract("peak-threshold", what), observed_max_(observed_max) {}

    double observed_max() const noexcept { return observed_max_; }

private:
    double observed_max_;
};

// Bad experiment configuration (CLI exit code 2).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config", what) {}
};

}  // namespace qaction
