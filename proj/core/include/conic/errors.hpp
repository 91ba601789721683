#pragma once

#include <stdexcept>
#include <string>

namespace conic {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error {
    using Error::Error;
};
struct EvenCharacteristicError : Error {
    using Error::Error;
};
struct ReducibleModulusError : Error {
    using Error::Error;
};
struct NoBuiltinModulusError : Error {
    using Error::Error;
};
struct DivisionByZeroError : Error {
    using Error::Error;
};
struct FieldMismatchError : Error {
    using Error::Error;
};
struct ZeroInputError : Error {
    using Error::Error;
};
struct PointOnConicError : Error {
    using Error::Error;
};
struct DimensionMismatchError : Error {
    using Error::Error;
};
struct NotUnimodularError : Error {
    using Error::Error;
};
struct BoundExceededError : Error {
    using Error::Error;
};
struct VerificationFailedError : Error {
    using Error::Error;
};
struct UnknownMatrixError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

} // namespace conic
