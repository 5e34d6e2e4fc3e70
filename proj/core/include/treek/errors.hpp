#pragma once

#include <stdexcept>
#include <string>

namespace treek {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or unreadable input data (dataset files, grid files, ...).
class ParseError : public Error {
public:
    using Error::Error;
};

/// An object violates a structural invariant (bad label, self-loop, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A configurable resource limit was exceeded.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// The SVM solver could not produce a model.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Inconsistent or unusable configuration of an operation.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace treek
