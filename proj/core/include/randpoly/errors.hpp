#pragma once

#include <stdexcept>

namespace randpoly {

// Base for all runtime failures raised by this library. Programming errors
// (mismatched dimensions, out-of-contract arguments) throw std::invalid_argument
// instead and are not meant to be caught in normal control flow.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input point set spans a lower-dimensional affine subspace than required.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Operation is not defined for the given body model (e.g. a projection
// density of a non rotation-invariant model).
class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

// Numeric argument lies outside the mathematical domain of the function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Rejection sampler exhausted its attempt budget (acceptance rate too low).
class RejectionBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature hit the interval budget before reaching the tolerance.
class QuadratureNoConvergence : public Error {
 public:
  using Error::Error;
};

// A claimed set inclusion could not be verified, so a comparison that relies
// on it refuses to report results.
class ContainmentUnverified : public Error {
 public:
  using Error::Error;
};

}  // namespace randpoly
