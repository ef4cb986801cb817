#pragma once

#include <functional>

#include "skewlab/model.hpp"
#include "skewlab/scale_speed.hpp"

namespace skewlab {

/// Closed-form exit quantities for the two-sided exit problem from (l, r),
/// with constants precomputed once per spec.
///
/// Everything here comes from the scale/speed representation of the
/// generator A = (1/2) d/dM d/dS:
///
///   * hit probability   phi(x) = (S(x) - S(l)) / (S(r) - S(l)),
///   * mean exit time    v(x)   = 2 (1 - phi) Sigma-(x) + 2 phi Sigma+(x),
///
/// where Sigma-(x) = int_l^x (S(eta) - S(l)) dM(eta) and Sigma+(x) =
/// int_x^r (S(r) - S(eta)) dM(eta). For the piecewise-constant (line) and
/// radial (bessel2) coefficient fields both integrals evaluate in closed
/// form; the cached constants below are the pieces that do not depend on x.
class ExitQuantities {
 public:
  explicit ExitQuantities(const ModelSpec& spec);

  /// P_x(hit r before l) for x in [l, r].
  double exit_prob(double x) const;

  /// E_x[first exit time from (l, r)] for x in [l, r]; zero at the ends.
  double mean_exit(double x) const;

  const ModelSpec& spec() const { return spec_; }

  // Cached constants, exposed for diagnostics and algebraic tests.
  // Line only (WrongKind otherwise):
  //   i1 = S(r)M(r) - S(l)M(l) - int_l^r S dM,
  //   i2 = alpha (1-alpha) (S(r) - S(l)).
  double i1() const;
  double i2() const;
  // Bessel2 only (WrongKind otherwise); pi1, pi2 are the two pieces of
  // S(r)M(r); pi3 = S(r) - S(l); pi4 = int_l^r S dM; pi_star =
  // pi1 + pi2 - pi4 - S(l)M(l).
  double pi1() const;
  double pi2() const;
  double pi3() const;
  double pi4() const;
  double pi_star() const;

 private:
  void require_kind(ModelKind kind) const;

  ModelSpec spec_;
  ScaleSpeed ss_;
  // Line cache.
  double line_i1_ = 0.0;
  double line_i2_ = 0.0;
  double scale_l_ = 0.0;
  double scale_span_ = 0.0;  // S(r) - S(l)
  // Bessel cache.
  double pi1_ = 0.0;
  double pi2_ = 0.0;
  double pi3_ = 0.0;
  double pi4_ = 0.0;
  double pi_star_ = 0.0;
  double left_log_coeff_ = 0.0;   // coefficient of ln(x/l) on (l, ell]
  double right_log_coeff_ = 0.0;  // coefficient of ln(x/ell) on (ell, r)
};

/// Convenience wrappers over ExitQuantities.
double exit_prob(const ModelSpec& spec, double x);
/// Mean exit time; throws WrongKind when the spec kind does not match.
double mean_exit_line(const ModelSpec& spec, double x);
double mean_exit_bessel(const ModelSpec& spec, double x);
/// Kind-dispatching form.
double mean_exit(const ModelSpec& spec, double x);

/// Exit quantities for a subinterval [a, b] of [l, r], with the same
/// diffusion. Used for embedded-chain holding times: when (a, b) straddles
/// the interface the two-branch formulas apply with (a, b) as endpoints;
/// otherwise the classical one-sided formulas (with the local variance) do.
/// Requires l <= a < b <= r and x in [a, b].
double exit_prob_interval(const ModelSpec& spec, double a, double b, double x);
double mean_exit_interval(const ModelSpec& spec, double a, double b, double x);

/// Mean exit time from (a, b) started at the upper end b, which reflects:
/// E_b[time to reach a] with reflection at b. Closed form
/// 2 int_a^b (M(b) - M(eta)) dS(eta) for the unit-variance limit process;
/// used for the reflecting-node holding time of the limit chain.
double reflected_hold_line(double a, double b);
double reflected_hold_bessel(double a, double b);

/// General source: solves A v = -f, v(l) = v(r) = 0 through the kernel
/// representation, integrating f against the scale/speed Green kernel with
/// adaptive Simpson per smooth piece (split exactly at the interface).
/// quad_tol is the absolute tolerance per piece.
double green_solution(const ModelSpec& spec, const std::function<double(double)>& f,
                      double x, double quad_tol = 1e-10);
/// Same on a subinterval [a, b].
double green_solution_interval(const ModelSpec& spec, const std::function<double(double)>& f,
                               double a, double b, double x, double quad_tol = 1e-10);

/// Coefficient C of the limit solution on (l, ell):
///   line:    v(x) = C x - x^2          (stated for l = 0, ell = 1 only),
///   bessel2: v(x) = C ln(x/l) - (x^2 - l^2)/2.
/// Values: Neumann C = 2 resp. ell^2; Robin(G) C = (2+G)/(1+G) resp.
/// (ell/G + (ell^2 - l^2)/2) / (1/(ell G) + ln(ell/l)); Dirichlet C = 1
/// resp. (ell^2 - l^2) / (2 ln(ell/l)). The Robin value interpolates the
/// other two as G -> 0 and G -> infinity.
/// Throws UnsupportedGeometry for a line geometry other than l=0, ell=1.
double limit_coefficient(ModelKind kind, const Geometry& geometry, const Regime& regime);

/// The limit mean exit time itself, for x in [l, ell].
double limit_solution(ModelKind kind, const Geometry& geometry, const Regime& regime,
                      double x);

/// Residual of the interface boundary condition at ell for the candidate
/// coefficient C: v'(ell) for Neumann, v(ell) for Dirichlet,
/// v'(ell) + G v(ell) for Robin. Zero (to rounding) at the exact C.
double bc_residual(ModelKind kind, const Geometry& geometry, const Regime& regime,
                   double coefficient);

}  // namespace skewlab
