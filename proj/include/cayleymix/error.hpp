#pragma once

#include <stdexcept>
#include <string>

namespace cayleymix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad side length, negative time, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured size or enumeration budget would be exceeded.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to meet its accuracy contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cayleymix
