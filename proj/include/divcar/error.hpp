#pragma once

#include <stdexcept>
#include <string>

namespace divcar {

/// Base of every exception thrown by the library. Callers that only need a
/// message catch this; the CLI inspects the concrete type to pick an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed files, unknown ids, invalid parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A broken internal invariant. Seeing one of these is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace divcar
