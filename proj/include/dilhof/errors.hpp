#pragma once

#include <stdexcept>
#include <string>

namespace dilhof {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A term left the signed 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An f-specification cannot produce the requested terms.
class InvalidFSpec : public Error {
 public:
  using Error::Error;
};

/// A generator parameter is out of its documented domain.
class InvalidParameter : public InvalidFSpec {
 public:
  using InvalidFSpec::InvalidFSpec;
};

/// A supplied q-sequence violates q(1) = 1 or 1 <= q(n) <= n.
class InvalidQ : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration was asked for beyond its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dilhof
