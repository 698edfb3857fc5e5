#pragma once

#include <stdexcept>
#include <string>

namespace nefcone {

/// Base of every error raised by the library. The CLI maps it to exit code 1.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// Argument shapes or dimensions do not fit together.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A certificate could not be produced with the given search bounds; the
/// caller should enlarge them. Never accompanied by a (possibly wrong) answer.
class InconclusiveError : public Error {
  public:
    using Error::Error;
};

/// An enumeration would exceed its documented resource bound.
class ResourceError : public Error {
  public:
    using Error::Error;
};

} // namespace nefcone
