#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hyperbolic {

// Malformed input: wrong dimensions, shapes, or documents that violate a
// type invariant. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical precondition does not hold for otherwise well-formed input
// (a direction outside the hyperbolicity cone, a vanishing trace, ...).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An enumeration would exceed the hard size cap of the operation.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A polynomial that was expected to be real-rooted produced a root whose
// imaginary part exceeds the acceptance tolerance.
class NonRealRootError : public std::runtime_error {
 public:
  NonRealRootError(const std::string& what, std::complex<double> root)
      : std::runtime_error(what), root_(root) {}
  std::complex<double> root() const { return root_; }

 private:
  std::complex<double> root_;
};

}  // namespace hyperbolic
