#pragma once

#include <stdexcept>
#include <string>

namespace maxvol {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: index out of range, dimension mismatch, non-finite entry.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (matrix text, DIMACS, JSON interchange).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The columns do not span enough dimensions for the request.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// An enumeration or construction would exceed its configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An iterative routine hit its iteration limit.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of a check does not hold for its input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace maxvol
