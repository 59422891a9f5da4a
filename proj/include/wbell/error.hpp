#ifndef WBELL_ERROR_HPP
#define WBELL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wbell {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes or dimensions that do not fit together.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A precondition on a numeric value (Hermiticity, norm, range) failed.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A speed at or above the speed of light.
class SuperluminalError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Rejected run configuration; `field()` names the offending entry.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace wbell

#endif // WBELL_ERROR_HPP
