#pragma once

#include <stdexcept>
#include <string>

namespace akhsylv {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quadrature or series failed to reach its requested accuracy.
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// The iteration cannot converge (rate base <= 1, stagnation).
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Intervals, circles or domains are geometrically invalid for the request.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// The operation does not support this kind of domain (e.g. wrong interval count).
class UnsupportedDomainError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Zero lies in a spectral set where an inverse is required.
class SingularDomainError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Matrix dimensions are inconsistent.
class DimensionError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// A point was evaluated outside the set where the quantity is defined.
class DomainError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Computed recurrence data lost positivity; more quadrature nodes are needed.
class IllConditionedError : public AccuracyError {
public:
    using AccuracyError::AccuracyError;
};

/// Malformed textual input (domain strings, command flags). Carries the character offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// File reading or writing failed.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace akhsylv
