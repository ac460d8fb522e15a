#pragma once

#include <stdexcept>
#include <string>

namespace pfield {

/// Invalid parameter outside an operation's domain (b <= 1, alpha outside (0,2], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Infinite-plane interference does not exist for the requested path-loss exponent.
class DivergenceError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Stable law with zero dispersion requested where a sample is required.
class DegenerateDistributionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Interferer co-located with the receiver (R = 0).
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Zero noise and zero interference: the SINR is unbounded.
class InfiniteSinrError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Bad constellation size, malformed constellation or scenario file.
class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Duplicate points or an otherwise unusable decision-region layout.
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Quadrature or transform inversion failed to reach the requested tolerance.
class AccuracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root finder could not bracket the target.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Time-domain projection requested with too few samples per carrier period.
class UnderSamplingError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace pfield
