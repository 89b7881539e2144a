#pragma once

#include <stdexcept>
#include <string>

namespace oscint {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Gamma evaluated too close to a non-positive integer.
struct PoleError : Error {
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
struct DomainError : Error {
  using Error::Error;
};

// Structurally invalid parameters (bad cutoff bounds, empty grids, ...).
struct InvalidSpec : Error {
  using Error::Error;
};

// A derivative of the amplitude beyond the constructed jet was requested.
struct JetExhausted : Error {
  using Error::Error;
};

// A moment integral that does not converge was requested.
struct DivergentIntegral : Error {
  using Error::Error;
};

// More Taylor orders requested than the remainder order supports.
struct OrderTooHigh : Error {
  using Error::Error;
};

// Least-squares extraction rejected: condition diagnostic over threshold.
struct IllConditionedFit : Error {
  using Error::Error;
};

// Fewer than three usable points supplied to the slope fitter.
struct InsufficientPoints : Error {
  using Error::Error;
};

// Malformed textual input (amplitude JSON, alpha syntax).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace oscint
