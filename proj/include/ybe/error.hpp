#pragma once

#include <stdexcept>
#include <string>

namespace ybe {

  /// Base class of every exception thrown by this library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  /// Operands or inputs that do not fit together (mismatched groups, bad
  /// table shapes, malformed literals).
  class StructuralError : public Error {
   public:
    using Error::Error;
  };

  /// A documented precondition of an operation does not hold.
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  /// A mathematical object failed verification; the message carries a
  /// concrete witness.
  class VerificationError : public Error {
   public:
    using Error::Error;
  };

  /// A computation would exceed a configured size bound.
  class BoundError : public Error {
   public:
    using Error::Error;
  };

}  // namespace ybe
