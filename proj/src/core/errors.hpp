#pragma once

#include <stdexcept>

namespace otgs {

/// Invalid argument or malformed value.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No feasible flow exists for the requested instance.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance exceeds an enumeration guard.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace otgs
