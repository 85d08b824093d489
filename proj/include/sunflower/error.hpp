#pragma once

#include <stdexcept>
#include <string>

namespace sunflower {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (member too large, non-uniform input, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A finite truncation of an infinite construction was not large enough.
class HorizonExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed input file or map spec string.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A size cap guarding a combinatorial blow-up was hit.
class CapExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace sunflower
