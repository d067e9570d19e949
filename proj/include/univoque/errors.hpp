#pragma once

#include <stdexcept>
#include <string>

namespace univoque {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidDigit : public Error {
 public:
  using Error::Error;
};

/// The base's enclosure cannot be separated from 1.
class DegenerateBase : public Error {
 public:
  using Error::Error;
};

/// Refinement cap reached without deciding a sign and no symbolic zero test applies.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class BaseOutOfRange : public Error {
 public:
  using Error::Error;
};

class NoRootInRange : public Error {
 public:
  using Error::Error;
};

class AmbiguousRoot : public Error {
 public:
  using Error::Error;
};

class NotSelfAdmissible : public Error {
 public:
  using Error::Error;
};

class InvalidPivot : public Error {
 public:
  using Error::Error;
};

class DepthMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyCloud : public Error {
 public:
  using Error::Error;
};

}  // namespace univoque
