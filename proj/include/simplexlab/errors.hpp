#pragma once

#include <stdexcept>
#include <string>

namespace simplexlab {

// Base of every error raised by the library. Each subclass corresponds to one
// failure class the CLI maps onto a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The quadrature kernel could not reach the requested tolerance even at the
// configured precision cap.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// The four vertices of a simplex do not span 4-space.
class SingularSimplex : public Error {
 public:
  using Error::Error;
};

// Quantized canonical key could not be stabilized within working precision.
class KeyUnstable : public Error {
 public:
  using Error::Error;
};

// Rational reconstruction was asked for more denominator range than the
// available digits can support.
class PrecisionTooLow : public Error {
 public:
  using Error::Error;
};

}  // namespace simplexlab
