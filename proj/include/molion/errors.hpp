#pragma once

#include <stdexcept>
#include <string>

namespace molion {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A unit tag was applied to a quantity of another dimension.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Input data failed validation; `field()` names the offending field.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Physically unsupported regime (attractive gas, depleted condensate, ...).
class RegimeError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure (root bracket, quadrature, ...) did not converge.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace molion
