#pragma once

#include <stdexcept>
#include <string>

namespace entrec {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative eigenvalue solver hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition or type invariant.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Correlation estimator with a vanishing normalization.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// Every amplitude was discarded by post-selection.
class PostSelectionError : public Error {
 public:
  using Error::Error;
};

/// Quadrature grid too coarse for the requested oscillation.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace entrec
