#pragma once

#include <iosfwd>

#include "skewlab/model.hpp"

namespace skewlab {

/// Disambiguates one-sided evaluation at the interface, where the densities
/// jump. Values strictly left/right of ell never need a side.
enum class Side { Left, Right };

/// Natural scale S and speed measure M of the skew diffusion.
///
/// The generator is A = (1/2) d/dM d/dS. S is the continuous, strictly
/// increasing function with A S = 0, which encodes the transmission
/// condition: (1-alpha) S'(ell-) = alpha S'(ell+). Consequences used
/// throughout the library:
///   * hitting probabilities are ratios of S increments,
///   * the interface jump weight alpha falls out of the S slopes alone,
///   * mean exit quantities are integrals against dM of S increments.
///
/// Densities s = S', m = M' are piecewise smooth with a jump at ell;
/// evaluating them exactly at ell requires an explicit Side. S and M
/// themselves are continuous and accept any x in [l, r].
class ScaleSpeed {
 public:
  explicit ScaleSpeed(const ModelSpec& spec);

  /// Scale density s(x). Throws OutOfDomain for x outside [l, r] or for
  /// x == ell without a side.
  double scale_density(double x) const;
  double scale_density(double x, Side side) const;

  /// Scale function S(x), continuous on [l, r], S(A S = 0) normalization:
  ///   line:    S = x/(1-alpha) left of ell, continued with slope 1/alpha;
  ///   bessel2: S = ln(x)/(1-alpha) left of ell, continued with slope
  ///            1/(alpha x).
  double scale_function(double x) const;

  /// Speed density m(x); same side rules as scale_density.
  double speed_density(double x) const;
  double speed_density(double x, Side side) const;

  /// Speed measure M(x) = integral of m from a fixed origin, continuous.
  double speed_measure(double x) const;

  /// Diffusion variance: 1 left of ell, lambda right of it.
  double sigma2(double x) const;
  double sigma2(double x, Side side) const;

  const ModelSpec& spec() const { return spec_; }

  /// Debug dump: CSV rows "x,S,M" on an (n+1)-point uniform grid over [l, r].
  void write_table_csv(std::ostream& out, int n = 100) const;

 private:
  Side resolve_side(double x) const;
  Side resolve_side(double x, Side at_interface) const;
  void check_domain(double x) const;

  ModelSpec spec_;
  double scale_at_ell_;  // S(ell), cached for the right-branch continuation
  double speed_at_ell_;  // M(ell)
};

}  // namespace skewlab
