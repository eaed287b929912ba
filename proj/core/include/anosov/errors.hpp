#pragma once

#include <stdexcept>
#include <string>

namespace anosov {

/// Raised when model parameters violate their domain (λ, n, m, p, r1, r2).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an operation receives a point or value outside its domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by boundary classification for points that are not on ∂V.
class ClassificationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Raised for inconsistent run configuration (sampler bounds, config files).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a grid is too coarse to certify a constant.
class ResolutionError : public std::runtime_error {
public:
    ResolutionError(const std::string& what, int suggested_grid)
        : std::runtime_error(what), suggested_grid_(suggested_grid) {}

    int suggested_grid() const noexcept { return suggested_grid_; }

private:
    int suggested_grid_;
};

/// Raised when no admissible cone exists for the given parameters.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when two data sets that must correspond do not (e.g. orbit counts).
class DataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace anosov
