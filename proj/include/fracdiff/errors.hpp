#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace fracdiff {

// Compact number rendering for error messages.
inline std::string show(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter or argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Argument on the principal-branch cut (s real and <= 0).
class BranchError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Pointwise value requested for a kernel that is a distribution (alpha = 1).
class DistributionalKernel : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class BoundaryDecayViolation : public Error {
 public:
  using Error::Error;
};

class InversionFailure : public Error {
 public:
  InversionFailure(const std::string& what, double wavenumber)
      : Error(what), k_(wavenumber) {}

  double wavenumber() const noexcept { return k_; }

 private:
  double k_;
};

}  // namespace fracdiff
