// Exception taxonomy shared by all argmin modules.
#pragma once

#include <stdexcept>
#include <string>

namespace argmin {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// Adaptive quadrature exhausted its refinement budget before reaching tol.
struct NonConvergence : Error {
  using Error::Error;
};

// Grid steps of two GridFunctions differ beyond 1e-12 relative.
struct GridMismatch : Error {
  using Error::Error;
};

// Consecutive-order spread of a Laplace inversion exceeded 10% relative.
struct UnstableInversion : Error {
  using Error::Error;
};

struct EmptySample : Error {
  using Error::Error;
};

struct InvalidGrid : Error {
  using Error::Error;
};

// A walk simulator was handed a model it does not support.
struct ModelMismatch : Error {
  using Error::Error;
};

// The requested stable law (or its negative) is a subordinator; the argmin
// process degenerates there.
struct SubordinatorRejected : Error {
  using Error::Error;
};

struct WindowTooLarge : Error {
  using Error::Error;
};

struct NonIntegerWindow : Error {
  using Error::Error;
};

struct HorizonTooShort : Error {
  using Error::Error;
};

struct NotFound : Error {
  using Error::Error;
};

// Exact enumeration asked for a window beyond the 2^(N+1) budget.
struct TooLarge : Error {
  using Error::Error;
};

struct GridTooCoarse : Error {
  using Error::Error;
};

// Rejection sampling starved the conditioning bin.
struct InsufficientConditionedSamples : Error {
  using Error::Error;
};

}  // namespace argmin
