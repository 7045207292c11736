#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracdecay {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input. CLI exit status 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A mathematical hypothesis of the requested computation does not hold
/// (e.g. overlapping first-level images for the Moran solver).
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

/// An enumeration would exceed its configured cap. CLI exit status 3.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, double estimated_count)
      : Error(what), estimated_count_(estimated_count) {}

  double estimated_count() const noexcept { return estimated_count_; }

 private:
  double estimated_count_;
};

/// A post-condition that should hold by construction failed. CLI exit status 4.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracdecay
