#ifndef FRONTSEL_ERRORS_HPP
#define FRONTSEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frontsel {

/// Malformed or inconsistent input: length mismatches, missing parameters,
/// bad CSV cells. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A strategy was asked to do something it cannot (A-KP beyond two
/// objectives, plots beyond three). Also an exit-2 condition.
class UnsupportedError : public InputError {
 public:
  using InputError::InputError;
};

/// Inputs are well-formed but the requested computation has no answer:
/// an empty frontier or collapsed calibration anchors. Exit code 3.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateCalibrationError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace frontsel

#endif  // FRONTSEL_ERRORS_HPP
