#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spectral {

/// Failure categories shared by the library and the command-line driver.
enum class ErrorKind {
  invalid_argument,
  unsupported_degree,
  not_positive_definite,
  convergence_failure,
  shift_in_spectrum,
  inconsistent_enclosure,
};

/// Stable kebab-case name, used in machine-readable error objects.
const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

class UnsupportedDegree : public Error {
 public:
  UnsupportedDegree(int requested, int supported);
  int requested() const noexcept { return requested_; }

 private:
  int requested_;
};

/// Cholesky met a pivot at or below the definiteness threshold.
class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(std::size_t pivot_index, double pivot);
  std::size_t pivot_index() const noexcept { return pivot_index_; }
  double pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_index_;
  double pivot_;
};

class ConvergenceFailure : public Error {
 public:
  explicit ConvergenceFailure(const std::string& what) : Error(ErrorKind::convergence_failure, what) {}
};

/// The shifted Gram matrix A2t is not numerically positive definite at shift t.
class ShiftInSpectrum : public Error {
 public:
  ShiftInSpectrum(double shift, std::size_t pivot_index);
  double shift() const noexcept { return shift_; }

 private:
  double shift_;
};

/// A paired lower bound exceeded its upper bound.
class InconsistentEnclosure : public Error {
 public:
  InconsistentEnclosure(int index, double lower, double upper);
  int index() const noexcept { return index_; }

 private:
  int index_;
};

}  // namespace spectral
