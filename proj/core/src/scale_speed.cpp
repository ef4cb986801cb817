#include "skewlab/scale_speed.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "skewlab/config.hpp"

namespace skewlab {

namespace {

std::string out_of_domain_message(double x, const Geometry& g) {
  std::ostringstream os;
  os << "x=" << x << " outside [" << g.l << ", " << g.r() << "]";
  return os.str();
}

}  // namespace

ScaleSpeed::ScaleSpeed(const ModelSpec& spec)
    : spec_(validate(spec.geometry, spec.params, spec.kind)) {
  const Geometry& g = spec_.geometry;
  const double one_minus_alpha = 1.0 - spec_.params.alpha;
  if (spec_.kind == ModelKind::Line) {
    scale_at_ell_ = g.ell / one_minus_alpha;
    speed_at_ell_ = one_minus_alpha * g.ell;
  } else {
    scale_at_ell_ = std::log(g.ell) / one_minus_alpha;
    speed_at_ell_ = 0.5 * one_minus_alpha * g.ell * g.ell;
  }
}

void ScaleSpeed::check_domain(double x) const {
  const Geometry& g = spec_.geometry;
  if (!(x >= g.l && x <= g.r())) {
    throw OutOfDomain(out_of_domain_message(x, g));
  }
}

Side ScaleSpeed::resolve_side(double x) const {
  check_domain(x);
  if (x == spec_.geometry.ell) {
    throw OutOfDomain("x equals the interface; pass an explicit Side");
  }
  return x < spec_.geometry.ell ? Side::Left : Side::Right;
}

Side ScaleSpeed::resolve_side(double x, Side at_interface) const {
  check_domain(x);
  if (x == spec_.geometry.ell) return at_interface;
  return x < spec_.geometry.ell ? Side::Left : Side::Right;
}

double ScaleSpeed::scale_density(double x) const {
  return scale_density(x, resolve_side(x));
}

double ScaleSpeed::scale_density(double x, Side side) const {
  side = resolve_side(x, side);
  const double weight =
      side == Side::Left ? 1.0 - spec_.params.alpha : spec_.params.alpha;
  if (spec_.kind == ModelKind::Line) return 1.0 / weight;
  return 1.0 / (weight * x);
}

double ScaleSpeed::scale_function(double x) const {
  check_domain(x);
  const Geometry& g = spec_.geometry;
  const double alpha = spec_.params.alpha;
  if (spec_.kind == ModelKind::Line) {
    if (x <= g.ell) return x / (1.0 - alpha);
    return scale_at_ell_ + (x - g.ell) / alpha;
  }
  if (x <= g.ell) return std::log(x) / (1.0 - alpha);
  return scale_at_ell_ + std::log(x / g.ell) / alpha;
}

double ScaleSpeed::speed_density(double x) const {
  return speed_density(x, resolve_side(x));
}

double ScaleSpeed::speed_density(double x, Side side) const {
  side = resolve_side(x, side);
  const double alpha = spec_.params.alpha;
  const double lambda = spec_.params.lambda;
  const double weight = side == Side::Left ? 1.0 - alpha : alpha / lambda;
  if (spec_.kind == ModelKind::Line) return weight;
  return weight * x;
}

double ScaleSpeed::speed_measure(double x) const {
  check_domain(x);
  const Geometry& g = spec_.geometry;
  const double alpha = spec_.params.alpha;
  const double lambda = spec_.params.lambda;
  if (spec_.kind == ModelKind::Line) {
    if (x <= g.ell) return (1.0 - alpha) * x;
    return speed_at_ell_ + (alpha / lambda) * (x - g.ell);
  }
  if (x <= g.ell) return 0.5 * (1.0 - alpha) * x * x;
  return speed_at_ell_ + 0.5 * (alpha / lambda) * (x * x - g.ell * g.ell);
}

double ScaleSpeed::sigma2(double x) const { return sigma2(x, resolve_side(x)); }

double ScaleSpeed::sigma2(double x, Side side) const {
  side = resolve_side(x, side);
  return side == Side::Left ? 1.0 : spec_.params.lambda;
}

void ScaleSpeed::write_table_csv(std::ostream& out, int n) const {
  const Geometry& g = spec_.geometry;
  out << "x,S,M\n";
  for (int i = 0; i <= n; ++i) {
    const double x = g.l + (g.r() - g.l) * static_cast<double>(i) / n;
    out << format_double(x) << ',' << format_double(scale_function(x)) << ','
        << format_double(speed_measure(x)) << '\n';
  }
}

}  // namespace skewlab
