#pragma once

#include <stdexcept>
#include <string>

namespace qglab {

// Base class for all library errors so callers can catch qglab failures
// without swallowing unrelated std exceptions.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Gram-Schmidt residual fell below the rank tolerance.
struct LinearlyDependent : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  using Error::Error;
};

// Relation/adjacency passed to an operator-system builder lacks loops.
struct NotReflexive : Error {
  using Error::Error;
};

struct NotSymmetric : Error {
  using Error::Error;
};

struct NotUnitary : Error {
  using Error::Error;
};

struct NotRegular : Error {
  using Error::Error;
};

struct BadPartition : Error {
  using Error::Error;
};

struct ParameterOutOfRange : Error {
  using Error::Error;
};

// A rejection-sampling loop hit its retry budget.
struct ExhaustedRetries : Error {
  using Error::Error;
};

// The diagonal phase solver cannot reduce span preservation to entrywise
// phase constraints for this basis; callers fall back to the discrete search.
struct UnsupportedPattern : Error {
  using Error::Error;
};

}  // namespace qglab
