#pragma once

#include <string>

#include "skewlab/errors.hpp"

namespace skewlab {

/// Which one-dimensional diffusion the domain carries.
///
/// Line:    unit-variance Brownian motion left of the interface, variance
///          lambda to the right, with skew transmission at the interface.
/// Bessel2: radial part of planar Brownian motion (Bessel process of
///          dimension 2), same piecewise variance and skew transmission.
enum class ModelKind { Line, Bessel2 };

/// Domain (l, r) with the interface at ell and a thin outer shell of width
/// eps, so r = ell + eps. Invariant: 0 <= l < ell < r (and l > 0 for Bessel2,
/// enforced by validate()).
struct Geometry {
  double l = 0.0;
  double ell = 1.0;
  double eps = 0.1;

  double r() const { return ell + eps; }
};

/// Transmission and diffusion parameters.
///
/// alpha in (0,1): probability weight of continuing to the right at the
/// interface; equivalently the flux condition (1-alpha) v'(ell-) =
/// alpha v'(ell+). lambda > 0: diffusion variance on the right of ell.
struct SkewParams {
  double alpha = 0.5;
  double lambda = 1.0;
};

/// Validated (kind, geometry, params) bundle. Construct via validate().
struct ModelSpec {
  ModelKind kind = ModelKind::Line;
  Geometry geometry;
  SkewParams params;
};

/// Checks all invariants and returns the assembled spec.
///
/// Throws InvalidGeometry unless 0 <= l < ell < r (strictly positive l for
/// Bessel2); throws InvalidParams unless alpha in (0,1) and lambda > 0.
ModelSpec validate(const Geometry& geometry, const SkewParams& params, ModelKind kind);
/// Re-validates an already-assembled spec.
ModelSpec validate(const ModelSpec& spec);

/// Power-family coupling of the transmission parameters to the shell width:
/// alpha(eps) = a * eps^p, lambda(eps) = b * eps^q.
///
/// Admissible iff alpha(eps) * eps / lambda(eps) -> 0 as eps -> 0, i.e.
/// p + 1 - q > 0. The limit boundary condition at the interface is decided
/// by alpha/eps: p > 1 gives Neumann (reflection), p = 1 gives elastic
/// (Robin) with rate a, p < 1 gives Dirichlet (absorption).
struct Schedule {
  double a = 1.0;
  double p = 1.0;
  double b = 1.0;
  double q = 0.0;

  double alpha_at(double eps) const;
  double lambda_at(double eps) const;
  /// The vanishing condition alpha(eps) * eps / lambda(eps).
  double condition_at(double eps) const;
  bool admissible() const { return p + 1.0 - q > 0.0; }
};

/// Boundary condition satisfied by the limit problem at the interface.
enum class RegimeKind { Neumann, Robin, Dirichlet };

/// Classified limit regime; robin_rate is meaningful only for Robin.
struct Regime {
  RegimeKind kind = RegimeKind::Neumann;
  double robin_rate = 0.0;

  static Regime neumann() { return {RegimeKind::Neumann, 0.0}; }
  static Regime robin(double rate) { return {RegimeKind::Robin, rate}; }
  static Regime dirichlet() { return {RegimeKind::Dirichlet, 0.0}; }
};

/// Maps a schedule to its limit regime.
///
/// Throws InadmissibleSchedule if the vanishing condition fails
/// (p + 1 - q <= 0) or the schedule coefficients are not positive.
/// The classification depends only on the exponent p, so it is invariant
/// under rescaling eps -> c * eps; for p = 1 the Robin rate is a.
Regime classify_regime(const Schedule& schedule);

const char* to_string(ModelKind kind);
const char* to_string(RegimeKind kind);

/// Parses "line" / "bessel2"; throws ConfigError otherwise.
ModelKind model_kind_from_string(const std::string& name);

}  // namespace skewlab
