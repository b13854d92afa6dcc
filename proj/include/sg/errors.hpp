#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sg {

/// Raised when an argument lies outside an operation's domain (negative time,
/// non-positive mass, empty grid, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by the numeric oracles when the requested tolerance cannot be met
/// within the subdivision budget. Carries the best estimate reached.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> best_estimate,
                   double error_bound)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_bound_(error_bound) {}

  std::complex<double> best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  std::complex<double> best_estimate_;
  double error_bound_;
};

}  // namespace sg
