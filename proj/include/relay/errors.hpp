#pragma once

#include <stdexcept>

namespace relay {

// Error taxonomy shared across the library. The CLI maps these onto exit
// codes, so call sites should throw the narrowest type that applies.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A distribution, kernel, table shape or argument combination is invalid.
struct ValidationError : Error {
  using Error::Error;
};

// A scalar parameter lies outside its mathematical domain.
struct DomainError : Error {
  using Error::Error;
};

// An axis label or channel name did not resolve.
struct LookupError : Error {
  using Error::Error;
};

// A numeric self-check failed (NaN objective, identity mismatch).
struct NumericalError : Error {
  using Error::Error;
};

// A constrained search could not produce any feasible point.
struct InfeasibleError : Error {
  using Error::Error;
};

// A caller-supplied grid is too coarse to answer the request.
struct ResolutionError : Error {
  using Error::Error;
};

// Reading or writing a file failed.
struct IoError : Error {
  using Error::Error;
};

}  // namespace relay
