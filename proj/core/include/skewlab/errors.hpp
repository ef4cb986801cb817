#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

/// Base class for all library errors. Every throw site uses a subclass so
/// callers (and the CLI exit-code mapping) can dispatch on the failure kind.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Domain endpoints or interface violate 0 <= l < ell < r.
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

/// Transmission or diffusion parameters outside alpha in (0,1), lambda > 0.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// Power-family schedule fails the vanishing-condition requirement.
class InadmissibleSchedule : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside the domain, or at the interface without a side.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

/// Operation invoked for the wrong model kind.
class WrongKind : public Error {
 public:
  using Error::Error;
};

/// Closed-form limit requested for a geometry it is not stated for.
class UnsupportedGeometry : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its subdivision budget.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// Requested step size cannot resolve both sides of the interface.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

/// Tridiagonal solve hit a vanishing pivot.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Path functional integrand is not finite on the chain grid.
class UnboundedFunction : public Error {
 public:
  using Error::Error;
};

/// Config file could not be parsed or lacks a required key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace skewlab
