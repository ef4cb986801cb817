#include "skewlab/model.hpp"

#include <cmath>
#include <sstream>

namespace skewlab {

namespace {

std::string describe(const Geometry& g) {
  std::ostringstream os;
  os << "l=" << g.l << ", ell=" << g.ell << ", eps=" << g.eps;
  return os.str();
}

}  // namespace

ModelSpec validate(const Geometry& geometry, const SkewParams& params, ModelKind kind) {
  const double l = geometry.l;
  const double ell = geometry.ell;
  const double eps = geometry.eps;
  if (!std::isfinite(l) || !std::isfinite(ell) || !std::isfinite(eps)) {
    throw InvalidGeometry("geometry values must be finite (" + describe(geometry) + ")");
  }
  if (!(l >= 0.0 && l < ell)) {
    throw InvalidGeometry("require 0 <= l < ell (" + describe(geometry) + ")");
  }
  if (!(eps > 0.0)) {
    throw InvalidGeometry("require eps > 0 (" + describe(geometry) + ")");
  }
  if (kind == ModelKind::Bessel2 && !(l > 0.0)) {
    throw InvalidGeometry("bessel2 requires l > 0 (" + describe(geometry) + ")");
  }
  if (!std::isfinite(params.alpha) || !(params.alpha > 0.0 && params.alpha < 1.0)) {
    throw InvalidParams("require alpha in (0,1), got " + std::to_string(params.alpha));
  }
  if (!std::isfinite(params.lambda) || !(params.lambda > 0.0)) {
    throw InvalidParams("require lambda > 0, got " + std::to_string(params.lambda));
  }
  return ModelSpec{kind, geometry, params};
}

ModelSpec validate(const ModelSpec& spec) {
  return validate(spec.geometry, spec.params, spec.kind);
}

double Schedule::alpha_at(double eps) const { return a * std::pow(eps, p); }

double Schedule::lambda_at(double eps) const { return b * std::pow(eps, q); }

double Schedule::condition_at(double eps) const {
  return alpha_at(eps) * eps / lambda_at(eps);
}

Regime classify_regime(const Schedule& schedule) {
  if (!std::isfinite(schedule.a) || !(schedule.a > 0.0) ||
      !std::isfinite(schedule.b) || !(schedule.b > 0.0) ||
      !std::isfinite(schedule.p) || !std::isfinite(schedule.q)) {
    throw InadmissibleSchedule("schedule coefficients must be finite with a > 0, b > 0");
  }
  if (!schedule.admissible()) {
    std::ostringstream os;
    os << "alpha*eps/lambda does not vanish: p + 1 - q = " << schedule.p + 1.0 - schedule.q
       << " <= 0 (p=" << schedule.p << ", q=" << schedule.q << ")";
    throw InadmissibleSchedule(os.str());
  }
  if (schedule.p > 1.0) return Regime::neumann();
  if (schedule.p == 1.0) return Regime::robin(schedule.a);
  return Regime::dirichlet();
}

const char* to_string(ModelKind kind) {
  return kind == ModelKind::Line ? "line" : "bessel2";
}

const char* to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::Neumann: return "neumann";
    case RegimeKind::Robin: return "robin";
    case RegimeKind::Dirichlet: return "dirichlet";
  }
  return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "line") return ModelKind::Line;
  if (name == "bessel2") return ModelKind::Bessel2;
  throw ConfigError("unknown kind '" + name + "' (expected line or bessel2)");
}

}  // namespace skewlab
