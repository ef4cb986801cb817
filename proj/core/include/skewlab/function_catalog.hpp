#pragma once

#include <string>
#include <vector>

namespace skewlab {

/// Catalog of payoff/source functions f used by the functional estimators
/// and the boundary-value solvers. Kept as tagged data rather than
/// std::function so specs can be compared, printed, and round-tripped
/// through config files.
class FunctionSpec {
 public:
  /// f(x) = 1.
  static FunctionSpec one();
  /// f(x) = x.
  static FunctionSpec linear();
  /// f(x) = 1 for x <= ell, 0 beyond the interface.
  static FunctionSpec indicator_left(double ell);
  /// Piecewise-linear interpolant through (xs[i], ys[i]); constant
  /// extrapolation outside [xs.front(), xs.back()]. Requires >= 2 knots
  /// with strictly increasing xs.
  static FunctionSpec piecewise_linear(std::vector<double> xs, std::vector<double> ys);

  /// Parse a config value: "one", "linear", "indicator_left", or
  /// "pwl:x0,y0;x1,y1;...". The interface position supplies the cutoff
  /// for indicator_left.
  static FunctionSpec parse(const std::string& text, double ell);

  double operator()(double x) const;
  const std::string& name() const { return name_; }

 private:
  enum class Tag { One, Linear, IndicatorLeft, PiecewiseLinear };

  FunctionSpec(Tag tag, std::string name) : tag_(tag), name_(std::move(name)) {}

  Tag tag_;
  std::string name_;
  double cutoff_ = 0.0;
  std::vector<double> xs_, ys_;
};

}  // namespace skewlab
