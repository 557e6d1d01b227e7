#pragma once

#include <stdexcept>
#include <string>

namespace kazhdan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact division of Laurent polynomials left a nonzero remainder.
class InexactDivision : public Error {
 public:
  using Error::Error;
};

/// Integer coefficient arithmetic left the range of a signed 64-bit integer.
class CoefficientOverflow : public Error {
 public:
  using Error::Error;
};

/// A Coxeter matrix that is malformed or describes an infinite group.
class InvalidCoxeterSystem : public Error {
 public:
  using Error::Error;
};

/// An h-polynomial that does not convert into a KL polynomial in q.
/// Only raised on internal inconsistencies.
class MalformedKL : public Error {
 public:
  using Error::Error;
};

/// A word or name that cannot be parsed against a system's generators.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace kazhdan
