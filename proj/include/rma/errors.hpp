#pragma once

#include <stdexcept>
#include <string>

namespace rma {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input: arity mismatches, bad literals,
// preconditions on user-supplied data.  CLI maps this to exit code 2.
struct StructuralError : Error {
  using Error::Error;
};

// Mathematically invalid request (division by zero, pole evaluation,
// out-of-domain parameter).  CLI maps this to exit code 2 as well.
struct DomainError : Error {
  using Error::Error;
};

// A configured budget (matrix size, dimension bound, sample cap) was
// exceeded.  Deliberate refusal, not a bug.  CLI exit code 3.
struct ResourceError : Error {
  using Error::Error;
};

// File or serialization failure.  CLI exit code 4.
struct IoError : Error {
  using Error::Error;
};

// Violated internal invariant (exact division with a remainder, an
// elimination collapsing to zero).  Never expected on valid input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace rma
