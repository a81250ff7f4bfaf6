#pragma once

#include <stdexcept>
#include <string>

namespace chowla {

// Base class for every error raised by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: malformed literal, violated precondition.
struct invalid_input : error {
  using error::error;
};

// A value left the exact-arithmetic range. Never wraps silently.
struct range_error : error {
  using error::error;
};

// Requested case the library deliberately does not handle.
struct unsupported : error {
  using error::error;
};

// Internal consistency check failed.
struct corruption : error {
  using error::error;
};

}  // namespace chowla
