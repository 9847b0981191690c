#pragma once

#include <stdexcept>
#include <string>

namespace mlab {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated precondition, shape/field mismatch, malformed input.
struct invalid_input : error {
  using error::error;
};

// A resource guard refused the computation (enumeration too large, ...).
// The message names the bound that was violated.
struct guard_error : error {
  using error::error;
};

}  // namespace mlab
