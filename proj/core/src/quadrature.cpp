#include "skewlab/quadrature.hpp"

#include <cmath>

namespace skewlab {

namespace {

constexpr int kMaxDepth = 60;

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  // Factor 15 is the standard Richardson estimate for Simpson's rule.
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * (std::abs(a) + std::abs(b))) {
    return left + right + delta / 15.0;
  }
  if (depth >= kMaxDepth) {
    throw QuadratureFailure("adaptive Simpson exceeded max depth before reaching tolerance");
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
    throw QuadratureFailure("integrand not finite on the integration interval");
  }
  const double whole = simpson(fa, fm, fb, b - a);
  return sign * adapt(f, a, b, fa, fm, fb, whole, abs_tol, 0);
}

}  // namespace skewlab
