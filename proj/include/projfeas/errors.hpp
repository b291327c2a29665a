#pragma once

#include <stdexcept>
#include <string>

namespace projfeas {

/// Raised when a matrix decomposition does not converge or is fed non-finite data.
class DecompositionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point handed to an operation that requires membership in a set lies outside it.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid configuration or arguments (dimension mismatch, out-of-range constants).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A multivalued projection hit a point where no deterministic representative is configured.
class TieBreakError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InexactnessInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Not enough usable data to fit a convergence rate.
class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace projfeas
