#pragma once

#include <stdexcept>
#include <string>

namespace fibrep {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct DimMismatch : Error {
    using Error::Error;
};

struct UnknownName : Error {
    using Error::Error;
};

struct DimTooSmall : Error {
    using Error::Error;
};

struct EmptyWindow : Error {
    using Error::Error;
};

struct OutOfRange : Error {
    using Error::Error;
};

struct ZeroScalar : Error {
    using Error::Error;
};

struct ZeroFirstVector : Error {
    using Error::Error;
};

struct NonHermitian : Error {
    using Error::Error;
};

struct WindowTooShort : Error {
    using Error::Error;
};

struct NotIndependent : Error {
    using Error::Error;
};

struct BasisMismatch : Error {
    using Error::Error;
};

struct NoBreakpoint : Error {
    using Error::Error;
};

struct NotInjective : Error {
    using Error::Error;
};

struct PinConflict : Error {
    using Error::Error;
};

} // namespace fibrep
