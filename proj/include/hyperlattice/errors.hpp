#pragma once

#include <stdexcept>
#include <string>

namespace hyperlattice {

/// Violated precondition (bad parameter, invalid selection, not a frame).
/// The command-line front end maps this to exit code 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotAFrameError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerical failure: non-finite values, truncation tails, iteration caps.
/// The command-line front end maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AdmissibilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

class TruncationError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DiscretizationError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateInputError : public NumericError {
 public:
  using NumericError::NumericError;
};

class IllConditionedError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace hyperlattice
