#pragma once

#include <stdexcept>
#include <string>

namespace qbr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class DenominatorVanishes : public Error {
public:
    DenominatorVanishes() : Error("denominator vanishes under specialization") {}
};

class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("coefficients live in different fields") {}
};

// Raised when the step budget of a product computation is exhausted.
class RewriteBudgetExceeded : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class SizeMismatch : public Error {
public:
    using Error::Error;
};

class CacheVersionMismatch : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class InternalInconsistency : public Error {
public:
    using Error::Error;
};

}  // namespace qbr
