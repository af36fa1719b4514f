#pragma once

#include <stdexcept>
#include <string>

namespace ssbsim {

// Precondition breach: wrong dimension, non-normalized input, misuse of a
// state-dependent construction.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Conditioning on a measurement branch of zero probability.
class DegenerateConditioningError : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

// Malformed or inconsistent input data (counts tables, expectation maps).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An informationally complete reconstruction is missing Pauli expectations.
class IncompleteDataError : public DataError {
public:
    using DataError::DataError;
};

// Averaging over an empty set of kept trials.
class EmptyEnsembleError : public DataError {
public:
    using DataError::DataError;
};

// Invalid run configuration (bad field value, missing seed, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem failure while reading inputs or writing results.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ssbsim
