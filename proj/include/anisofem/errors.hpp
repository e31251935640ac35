#pragma once

#include <stdexcept>
#include <string>

namespace anisofem {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |B| vanished where the anisotropy direction b = B/|B| is needed.
class DegenerateFieldError : public Error {
public:
    using Error::Error;
};

/// A closed-form expression was evaluated outside its domain of definition.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The factorization met a pivot below the singularity threshold.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration file or inconsistent problem description.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Reading or writing an output file failed.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace anisofem
