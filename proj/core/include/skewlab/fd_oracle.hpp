#pragma once

#include <functional>
#include <vector>

#include "skewlab/function_catalog.hpp"
#include "skewlab/model.hpp"

namespace skewlab {

/// Solution of a two-point boundary-value problem on a grid.
struct FdSolution {
  std::vector<double> x;  // grid nodes, strictly increasing
  std::vector<double> v;  // values at the nodes
  /// Piecewise-linear evaluation; throws OutOfDomain outside the grid.
  double value_at(double xq) const;
};

/// Second-order finite-difference solve of A v = -f on (l, r) with
/// v(l) = v(r) = 0, where A is the generator with variance 1 below the
/// interface and lambda above, plus the radial drift term for bessel2. The
/// interface node carries the transmission condition
/// (1 - alpha) v'(ell-) = alpha v'(ell+), discretized with one-sided
/// differences whose leading Taylor error is eliminated through the ODE
/// itself, keeping the row second order and tridiagonal. Per-side uniform
/// grids with at least 16 cells each. Independent of the closed forms: the
/// two are compared against each other in tests.
FdSolution solve_exit_bvp(const ModelSpec& spec, const FunctionSpec& f, double h);

/// Same operator and grid with f = 0 and v(l) = 0, v(r) = 1: the hit
/// probability of the upper end.
FdSolution solve_hit_probability_bvp(const ModelSpec& spec, double h);

/// Limit problem on (l, ell) with unit variance: (1/2) v'' (+ v'/(2x) term
/// for bessel2) = -f, v(l) = 0, and at ell the regime boundary condition:
/// Neumann v'(ell) = 0, Robin v'(ell) + G v(ell) = 0 (second-order ghost
/// row), or Dirichlet v(ell) = 0.
FdSolution solve_limit_bvp(ModelKind kind, double l, double ell, const Regime& regime,
                           const FunctionSpec& f, double h);

/// Average of a(x) u(x)^2 over the annulus ell < |y| < ell + eps per unit
/// shell width: (1/eps) int_ell^{ell+eps} a(x) u(x)^2 2 pi x dx. As
/// eps -> 0 this tends to the boundary trace below; the pair quantifies
/// how shell averages degenerate into boundary functionals.
double shell_average(const std::function<double(double)>& a,
                     const std::function<double(double)>& u, double ell, double eps);

/// The limiting boundary functional 2 pi ell a(ell) u(ell)^2.
double boundary_trace(const std::function<double(double)>& a,
                      const std::function<double(double)>& u, double ell);

}  // namespace skewlab
