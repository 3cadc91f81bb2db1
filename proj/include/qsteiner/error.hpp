#pragma once

#include <stdexcept>
#include <string>

namespace qsteiner {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// (t,k,n,q) fails a divisibility condition, so no system exists.
class Inadmissible : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Matrix or subspace shapes are incompatible.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A brute-force enumeration would exceed its size guard; nothing was
/// truncated.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// A q-binomial or Pochhammer factor in a denominator vanishes, so the
/// identity is undefined at this parameter tuple.
class VanishingDenominator : public Error {
public:
    using Error::Error;
};

/// Malformed design file or report input.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace qsteiner
