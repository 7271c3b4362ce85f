#pragma once

#include <stdexcept>
#include <string>

namespace cyent {

// Exception taxonomy. The CLI maps each family to an exit code:
//   InvalidInput -> 1, NonConvergence -> 2, InvariantViolation -> 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

class NonConvergence : public Error {
public:
  using Error::Error;
};

class InvariantViolation : public Error {
public:
  using Error::Error;
};

class DimensionTooSmall : public InvalidInput {
public:
  explicit DimensionTooSmall(int d)
      : InvalidInput("dimension must be >= 3, got " + std::to_string(d)) {}
};

class PoleError : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class NoSignChange : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class UnsupportedMode : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class ResourceCapExceeded : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class ToleranceNotAchieved : public NonConvergence {
public:
  using NonConvergence::NonConvergence;
};

} // namespace cyent
