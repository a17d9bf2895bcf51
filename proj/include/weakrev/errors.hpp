#pragma once

#include <stdexcept>
#include <string>

namespace weakrev {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Raised when Σ A_r†A_r deviates from the identity. Carries the Frobenius residual.
class CompletenessError : public Error {
 public:
  explicit CompletenessError(double residual)
      : Error("measurement set violates completeness: residual " + std::to_string(residual)),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

class DegenerateOperatorError : public Error {
 public:
  using Error::Error;
};

/// The smallest singular value of the outcome is below the reversibility threshold.
class NonReversibleError : public Error {
 public:
  using Error::Error;
};

class InformationWasExtractedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace weakrev
