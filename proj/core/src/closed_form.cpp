#include "skewlab/closed_form.hpp"

#include <cmath>
#include <sstream>

#include "skewlab/quadrature.hpp"

namespace skewlab {

namespace {

void check_interval(const ModelSpec& spec, double a, double b, double x) {
  const Geometry& g = spec.geometry;
  if (!(a >= g.l && b <= g.r() && a < b)) {
    std::ostringstream os;
    os << "interval [" << a << ", " << b << "] not inside [" << g.l << ", " << g.r() << "]";
    throw OutOfDomain(os.str());
  }
  if (!(x >= a && x <= b)) {
    std::ostringstream os;
    os << "x=" << x << " outside [" << a << ", " << b << "]";
    throw OutOfDomain(os.str());
  }
}

/// Mean exit from (a, b) for a line diffusion of constant variance sigma2:
/// (sigma2/2) v'' = -1, v(a) = v(b) = 0.
double line_one_sided(double sigma2, double a, double b, double x) {
  return (x - a) * (b - x) / sigma2;
}

/// Mean exit from (a, b) for the radial generator (sigma2/2)(v'' + v'/x):
/// v = A ln(x/a) - (x^2 - a^2)/(2 sigma2), A fixed by v(b) = 0.
double bessel_one_sided(double sigma2, double a, double b, double x) {
  const double coeff = (b * b - a * a) / (2.0 * sigma2 * std::log(b / a));
  return coeff * std::log(x / a) - (x * x - a * a) / (2.0 * sigma2);
}

/// Two-branch line mean exit from (a, b) with the interface strictly inside.
/// Sigma- and Sigma+ are the closed-form kernel integrals; phi is the scale
/// ratio. Independent of any normalization of S because only increments of
/// S enter.
double line_two_branch(double alpha, double lambda, double ell, double a, double b,
                       double x) {
  const double oma = 1.0 - alpha;
  const double span = (ell - a) / oma + (b - ell) / alpha;  // S(b) - S(a)
  const double sx = x <= ell ? (x - a) / oma : (ell - a) / oma + (x - ell) / alpha;
  const double phi = sx / span;

  double sigma_minus;  // int_a^x (S - S(a)) dM
  if (x <= ell) {
    sigma_minus = 0.5 * (x - a) * (x - a);
  } else {
    sigma_minus = 0.5 * (ell - a) * (ell - a) +
                  alpha * (ell - a) * (x - ell) / (lambda * oma) +
                  0.5 * (x - ell) * (x - ell) / lambda;
  }
  double sigma_plus;  // int_x^b (S(b) - S) dM
  if (x >= ell) {
    sigma_plus = 0.5 * (b - x) * (b - x) / lambda;
  } else {
    sigma_plus = oma * (b - ell) * (ell - x) / alpha + 0.5 * (ell - x) * (ell - x) +
                 0.5 * (b - ell) * (b - ell) / lambda;
  }
  return 2.0 * (1.0 - phi) * sigma_minus + 2.0 * phi * sigma_plus;
}

/// Two-branch radial mean exit from (a, b) with the interface strictly
/// inside. K multiplies ln(x/a) on the left branch; R multiplies ln(x/ell)
/// on the right branch. Both fall out of the same kernel integrals as in
/// the line case, with dS = dx/(weight x) and dM = weight x dx.
double bessel_two_branch(double alpha, double lambda, double ell, double a, double b,
                         double x) {
  const double oma = 1.0 - alpha;
  const double ell2 = ell * ell;
  const double span = std::log(ell / a) / oma + std::log(b / ell) / alpha;
  const double star = (oma / (2.0 * alpha) - 1.0 / (2.0 * lambda)) * ell2 *
                          std::log(b / ell) +
                      0.25 * (ell2 - a * a) + 0.25 * (b * b - ell2) / lambda;
  const double left_coeff = 2.0 * star / (oma * span);
  if (x <= ell) {
    return left_coeff * std::log(x / a) - 0.5 * (x * x - a * a);
  }
  const double right_coeff =
      2.0 * star / (alpha * span) + ell2 / lambda - (oma / alpha) * ell2;
  const double at_ell = left_coeff * std::log(ell / a) - 0.5 * (ell2 - a * a);
  return at_ell + right_coeff * std::log(x / ell) - 0.5 * (x * x - ell2) / lambda;
}

double mean_exit_interval_impl(const ModelSpec& spec, double a, double b, double x) {
  const double ell = spec.geometry.ell;
  const double alpha = spec.params.alpha;
  const double lambda = spec.params.lambda;
  if (x == a || x == b) return 0.0;
  if (spec.kind == ModelKind::Line) {
    if (b <= ell) return line_one_sided(1.0, a, b, x);
    if (a >= ell) return line_one_sided(lambda, a, b, x);
    return line_two_branch(alpha, lambda, ell, a, b, x);
  }
  if (b <= ell) return bessel_one_sided(1.0, a, b, x);
  if (a >= ell) return bessel_one_sided(lambda, a, b, x);
  return bessel_two_branch(alpha, lambda, ell, a, b, x);
}

double robin_rate_checked(const Regime& regime) {
  if (regime.kind == RegimeKind::Robin &&
      !(std::isfinite(regime.robin_rate) && regime.robin_rate > 0.0)) {
    throw InvalidParams("Robin regime requires a finite rate > 0");
  }
  return regime.robin_rate;
}

void check_limit_geometry(ModelKind kind, const Geometry& geometry) {
  if (kind == ModelKind::Line) {
    if (!(geometry.l == 0.0 && geometry.ell == 1.0)) {
      throw UnsupportedGeometry(
          "line limit coefficients are only stated for l = 0, ell = 1");
    }
    return;
  }
  if (!(geometry.l > 0.0 && geometry.l < geometry.ell)) {
    throw InvalidGeometry("bessel2 limit requires 0 < l < ell");
  }
}

}  // namespace

ExitQuantities::ExitQuantities(const ModelSpec& spec)
    : spec_(validate(spec.geometry, spec.params, spec.kind)), ss_(spec_) {
  const Geometry& g = spec_.geometry;
  const double alpha = spec_.params.alpha;
  const double lambda = spec_.params.lambda;
  const double oma = 1.0 - alpha;
  const double l = g.l;
  const double ell = g.ell;
  const double r = g.r();
  scale_l_ = ss_.scale_function(l);
  scale_span_ = ss_.scale_function(r) - scale_l_;
  if (spec_.kind == ModelKind::Line) {
    // i1 = S(r)M(r) - S(l)M(l) - int_l^r S dM, with the integral in closed
    // form piece by piece.
    const double s_dm = 0.5 * (ell * ell - l * l) +
                        alpha * ell * (r - ell) / (lambda * oma) +
                        0.5 * (r - ell) * (r - ell) / lambda;
    line_i1_ = ss_.scale_function(r) * ss_.speed_measure(r) -
               ss_.scale_function(l) * ss_.speed_measure(l) - s_dm;
    line_i2_ = alpha * oma * scale_span_;
  } else {
    const double ell2 = ell * ell;
    const double r2 = r * r;
    const double log_r_ell = std::log1p(g.eps / ell);
    pi1_ = 0.5 * (ell2 + (alpha / oma) * (r2 - ell2) / lambda) * std::log(ell);
    pi2_ = 0.5 * ((oma / alpha) * ell2 + (r2 - ell2) / lambda) * log_r_ell;
    pi3_ = std::log(ell / l) / oma + log_r_ell / alpha;
    pi4_ = 0.5 * ell2 * std::log(ell) - 0.5 * l * l * std::log(l) -
           0.25 * (ell2 - l * l) +
           (alpha / oma) * ((r2 - ell2) / (2.0 * lambda)) * std::log(ell) +
           (r2 / (2.0 * lambda)) * log_r_ell - 0.25 * (r2 - ell2) / lambda;
    pi_star_ = (oma / (2.0 * alpha) - 1.0 / (2.0 * lambda)) * ell2 * log_r_ell +
               0.25 * (ell2 - l * l) + 0.25 * (r2 - ell2) / lambda;
    left_log_coeff_ = 2.0 * pi_star_ / (oma * pi3_);
    right_log_coeff_ =
        2.0 * pi_star_ / (alpha * pi3_) + ell2 / lambda - (oma / alpha) * ell2;
  }
}

double ExitQuantities::exit_prob(double x) const {
  return (ss_.scale_function(x) - scale_l_) / scale_span_;
}

double ExitQuantities::mean_exit(double x) const {
  const Geometry& g = spec_.geometry;
  check_interval(spec_, g.l, g.r(), x);
  if (spec_.kind == ModelKind::Bessel2) {
    // Evaluate through the cached coefficients; identical algebra to
    // bessel_two_branch but without recomputing the constants.
    if (x == g.l || x == g.r()) return 0.0;
    const double l = g.l;
    const double ell = g.ell;
    if (x <= ell) {
      return left_log_coeff_ * std::log(x / l) - 0.5 * (x * x - l * l);
    }
    const double at_ell =
        left_log_coeff_ * std::log(ell / l) - 0.5 * (ell * ell - l * l);
    return at_ell + right_log_coeff_ * std::log(x / ell) -
           0.5 * (x * x - ell * ell) / spec_.params.lambda;
  }
  return mean_exit_interval_impl(spec_, g.l, g.r(), x);
}

void ExitQuantities::require_kind(ModelKind kind) const {
  if (spec_.kind != kind) {
    throw WrongKind(std::string("constant defined for ") + to_string(kind) +
                    " but spec kind is " + to_string(spec_.kind));
  }
}

double ExitQuantities::i1() const {
  require_kind(ModelKind::Line);
  return line_i1_;
}

double ExitQuantities::i2() const {
  require_kind(ModelKind::Line);
  return line_i2_;
}

double ExitQuantities::pi1() const {
  require_kind(ModelKind::Bessel2);
  return pi1_;
}

double ExitQuantities::pi2() const {
  require_kind(ModelKind::Bessel2);
  return pi2_;
}

double ExitQuantities::pi3() const {
  require_kind(ModelKind::Bessel2);
  return pi3_;
}

double ExitQuantities::pi4() const {
  require_kind(ModelKind::Bessel2);
  return pi4_;
}

double ExitQuantities::pi_star() const {
  require_kind(ModelKind::Bessel2);
  return pi_star_;
}

double exit_prob(const ModelSpec& spec, double x) {
  return ExitQuantities(spec).exit_prob(x);
}

double mean_exit_line(const ModelSpec& spec, double x) {
  if (spec.kind != ModelKind::Line) throw WrongKind("mean_exit_line requires a line spec");
  return ExitQuantities(spec).mean_exit(x);
}

double mean_exit_bessel(const ModelSpec& spec, double x) {
  if (spec.kind != ModelKind::Bessel2) {
    throw WrongKind("mean_exit_bessel requires a bessel2 spec");
  }
  return ExitQuantities(spec).mean_exit(x);
}

double mean_exit(const ModelSpec& spec, double x) {
  return ExitQuantities(spec).mean_exit(x);
}

double exit_prob_interval(const ModelSpec& spec, double a, double b, double x) {
  check_interval(spec, a, b, x);
  const ScaleSpeed ss(spec);
  const double sa = ss.scale_function(a);
  return (ss.scale_function(x) - sa) / (ss.scale_function(b) - sa);
}

double mean_exit_interval(const ModelSpec& spec, double a, double b, double x) {
  check_interval(spec, a, b, x);
  return mean_exit_interval_impl(spec, a, b, x);
}

double reflected_hold_line(double a, double b) {
  const double h = b - a;
  return h * h;
}

double reflected_hold_bessel(double a, double b) {
  return b * b * std::log(b / a) - 0.5 * (b * b - a * a);
}

double green_solution(const ModelSpec& spec, const std::function<double(double)>& f,
                      double x, double quad_tol) {
  return green_solution_interval(spec, f, spec.geometry.l, spec.geometry.r(), x, quad_tol);
}

double green_solution_interval(const ModelSpec& spec, const std::function<double(double)>& f,
                               double a, double b, double x, double quad_tol) {
  check_interval(spec, a, b, x);
  if (x == a || x == b) return 0.0;
  const ScaleSpeed ss(spec);
  const double ell = spec.geometry.ell;
  const double sa = ss.scale_function(a);
  const double sb = ss.scale_function(b);
  const double phi = (ss.scale_function(x) - sa) / (sb - sa);

  // Integrates g over [lo, hi] split at the interface, with the speed
  // density evaluated one-sided so piece endpoints at ell are well defined.
  const auto integrate_kernel = [&](double lo, double hi,
                                    const std::function<double(double, Side)>& g) {
    double total = 0.0;
    if (lo < ell && hi > lo) {
      const double piece_hi = std::min(hi, ell);
      total += integrate_adaptive(
          [&](double eta) { return g(eta, Side::Left); }, lo, piece_hi, quad_tol);
    }
    if (hi > ell) {
      const double piece_lo = std::max(lo, ell);
      total += integrate_adaptive(
          [&](double eta) { return g(eta, Side::Right); }, piece_lo, hi, quad_tol);
    }
    return total;
  };

  const double sigma_minus = integrate_kernel(a, x, [&](double eta, Side side) {
    return (ss.scale_function(eta) - sa) * f(eta) * ss.speed_density(eta, side);
  });
  const double sigma_plus = integrate_kernel(x, b, [&](double eta, Side side) {
    return (sb - ss.scale_function(eta)) * f(eta) * ss.speed_density(eta, side);
  });
  return 2.0 * (1.0 - phi) * sigma_minus + 2.0 * phi * sigma_plus;
}

double limit_coefficient(ModelKind kind, const Geometry& geometry, const Regime& regime) {
  check_limit_geometry(kind, geometry);
  const double rate = robin_rate_checked(regime);
  if (kind == ModelKind::Line) {
    switch (regime.kind) {
      case RegimeKind::Neumann: return 2.0;
      case RegimeKind::Robin: return (2.0 + rate) / (1.0 + rate);
      case RegimeKind::Dirichlet: return 1.0;
    }
  }
  const double l = geometry.l;
  const double ell = geometry.ell;
  const double log_ratio = std::log(ell / l);
  switch (regime.kind) {
    case RegimeKind::Neumann: return ell * ell;
    case RegimeKind::Robin:
      return (ell / rate + 0.5 * (ell * ell - l * l)) /
             (1.0 / (ell * rate) + log_ratio);
    case RegimeKind::Dirichlet: return 0.5 * (ell * ell - l * l) / log_ratio;
  }
  throw Error("unreachable regime");
}

double limit_solution(ModelKind kind, const Geometry& geometry, const Regime& regime,
                      double x) {
  const double coefficient = limit_coefficient(kind, geometry, regime);
  if (!(x >= geometry.l && x <= geometry.ell)) {
    std::ostringstream os;
    os << "x=" << x << " outside the limit domain [" << geometry.l << ", "
       << geometry.ell << "]";
    throw OutOfDomain(os.str());
  }
  if (kind == ModelKind::Line) return coefficient * x - x * x;
  return coefficient * std::log(x / geometry.l) - 0.5 * (x * x - geometry.l * geometry.l);
}

double bc_residual(ModelKind kind, const Geometry& geometry, const Regime& regime,
                   double coefficient) {
  check_limit_geometry(kind, geometry);
  const double rate = robin_rate_checked(regime);
  const double ell = geometry.ell;
  double value;       // v(ell)
  double derivative;  // v'(ell)
  if (kind == ModelKind::Line) {
    value = coefficient - 1.0;
    derivative = coefficient - 2.0;
  } else {
    value = coefficient * std::log(ell / geometry.l) -
            0.5 * (ell * ell - geometry.l * geometry.l);
    derivative = coefficient / ell - ell;
  }
  switch (regime.kind) {
    case RegimeKind::Neumann: return derivative;
    case RegimeKind::Robin: return derivative + rate * value;
    case RegimeKind::Dirichlet: return value;
  }
  throw Error("unreachable regime");
}

}  // namespace skewlab
