#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rys {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Index outside the range a table or operation supports.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// An iterative procedure (series, quadrature level doubling, eigensolver)
// failed to meet its tolerance within the iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hankel Cholesky lost positive definiteness at the working precision.
// Raise the precision and retry.
class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(std::size_t index, unsigned digits)
      : std::runtime_error("Cholesky pivot " + std::to_string(index) +
                           " not positive at " + std::to_string(digits) +
                           " digits; raise the precision"),
        index_(index),
        digits_(digits) {}

  std::size_t index() const noexcept { return index_; }
  unsigned digits() const noexcept { return digits_; }

 private:
  std::size_t index_;
  unsigned digits_;
};

// Nonlinear coefficient propagation hit a vanishing divisor or lost
// positivity.
class PropagationSingular : public std::runtime_error {
 public:
  explicit PropagationSingular(std::size_t index)
      : std::runtime_error("Laguerre-Freud propagation singular at n = " +
                           std::to_string(index)),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// A ladder coefficient or charge configuration is singular at the
// evaluation point.
class SingularEvaluation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-step flow integration produced a non-positive coefficient.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rys
