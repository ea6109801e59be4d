#pragma once

#include <stdexcept>
#include <string>

namespace msrimg {

// Argument outside the mathematical domain of an operation (z outside the
// curve's parameter range, nonpositive frequency, too few directions, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Refracted wave is evanescent: |xi * xhat_1| >= 1.
class EvanescentDirectionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Direction parallel to the interface; sign(xhat_2) is undefined.
class GrazingDirectionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Zero denominator in the transmission coefficient.
class SingularTransmissionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent experiment configuration (empty propagating set, zero matrix
// handed to the noise calibrator, ...).
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The multiple-scattering system (I - G S) is numerically singular.
class ResonanceError : public std::runtime_error {
 public:
  ResonanceError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_(condition_estimate) {}
  double condition_estimate() const noexcept { return condition_; }

 private:
  double condition_;
};

// Steering vector c.(1, v(theta_j)) vanishes for every direction.
class DegenerateSteeringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed scenario or dataset file. `offset` is a byte offset when the
// failure is inside a binary payload, otherwise -1.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, long long offset = -1)
      : std::runtime_error(what), offset_(offset) {}
  long long offset() const noexcept { return offset_; }

 private:
  long long offset_;
};

}  // namespace msrimg
