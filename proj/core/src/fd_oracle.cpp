#include "skewlab/fd_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "detail_tridiag.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/quadrature.hpp"

namespace skewlab {

namespace {

constexpr std::size_t kMinCellsPerSide = 16;
constexpr std::size_t kMaxRows = 20'000'000;

std::size_t cells_for(double len, double h) {
  if (!std::isfinite(h) || !(h > 0.0)) throw InvalidParams("fd: h must be positive");
  return std::max(kMinCellsPerSide, static_cast<std::size_t>(std::ceil(len / h)));
}

void append_uniform(std::vector<double>& x, double a, double b, std::size_t n_cells) {
  const double step = (b - a) / static_cast<double>(n_cells);
  for (std::size_t i = 1; i < n_cells; ++i) x.push_back(a + static_cast<double>(i) * step);
  x.push_back(b);
}

/// Interior row of -(sigma2/2)(v'' + kappa v'/x) = f at node x with uniform
/// spacing h; kappa = 1 for the radial operator, 0 on the line.
struct Row {
  double lower, diag, upper;
};

Row interior_row(double sigma2, double kappa, double x, double h) {
  const double diffusion = sigma2 / (2.0 * h * h);
  const double drift = kappa == 0.0 ? 0.0 : sigma2 * kappa / (4.0 * h * x);
  return {-diffusion + drift, 2.0 * diffusion, -diffusion - drift};
}

struct ExitAssembly {
  std::vector<double> x;
  std::vector<double> lower, diag, upper, rhs;
  std::size_t interface_index = 0;
};

/// Grid and matrix shared by the source problem and the hit-probability
/// problem; only boundary values and the right-hand side differ.
ExitAssembly assemble_exit_operator(const ModelSpec& raw, const FunctionSpec& f,
                                    bool zero_source, double h) {
  const ModelSpec spec = validate(raw);
  const double l = spec.geometry.l;
  const double ell = spec.geometry.ell;
  const double r = spec.geometry.r();
  const double alpha = spec.params.alpha;
  const double lambda = spec.params.lambda;
  const double kappa = spec.kind == ModelKind::Bessel2 ? 1.0 : 0.0;

  const std::size_t n_left = cells_for(ell - l, h);
  const std::size_t n_right = cells_for(spec.geometry.eps, h);
  if (n_left + n_right + 1 > kMaxRows) throw InvalidParams("fd: h produces too many rows");

  ExitAssembly a;
  a.interface_index = n_left;
  a.x.reserve(n_left + n_right + 1);
  a.x.push_back(l);
  append_uniform(a.x, l, ell, n_left);
  append_uniform(a.x, ell, r, n_right);

  const std::size_t n = a.x.size();
  const double h_left = (ell - l) / static_cast<double>(n_left);
  const double h_right = spec.geometry.eps / static_cast<double>(n_right);
  a.lower.assign(n, 0.0);
  a.diag.assign(n, 1.0);
  a.upper.assign(n, 0.0);
  a.rhs.assign(n, 0.0);

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (i == n_left) continue;
    const bool left_side = i < n_left;
    const Row row = interior_row(left_side ? 1.0 : lambda, kappa, a.x[i],
                                 left_side ? h_left : h_right);
    a.lower[i] = row.lower;
    a.diag[i] = row.diag;
    a.upper[i] = row.upper;
    a.rhs[i] = zero_source ? 0.0 : f(a.x[i]);
  }

  // Transmission row. One-sided differences for v'(ell +-) are corrected
  // through the ODE value of v'' at the interface, which keeps the row
  // second order. The geometric factors (1 +- kappa h / (2 ell)) come from
  // the radial drift's contribution to that correction. One-sided source
  // limits are sampled just off the interface so discontinuous f keeps its
  // side values.
  {
    const double denom_minus = 1.0 + kappa * h_left / (2.0 * ell);
    const double denom_plus = 1.0 - kappa * h_right / (2.0 * ell);
    const double w_minus = (1.0 - alpha) / (h_left * denom_minus);
    const double w_plus = alpha / (h_right * denom_plus);
    a.lower[n_left] = -w_minus;
    a.diag[n_left] = w_minus + w_plus;
    a.upper[n_left] = -w_plus;
    if (!zero_source) {
      const double f_minus = f(ell - 0.25 * h_left);
      const double f_plus = f(ell + 0.25 * h_right);
      a.rhs[n_left] = (1.0 - alpha) * h_left * f_minus / denom_minus +
                      alpha * h_right * f_plus / (lambda * denom_plus);
    }
  }
  return a;
}

FdSolution finish(ExitAssembly a) {
  FdSolution sol;
  sol.v = detail::solve_tridiagonal(std::move(a.lower), std::move(a.diag), std::move(a.upper),
                                    std::move(a.rhs));
  sol.x = std::move(a.x);
  return sol;
}

}  // namespace

double FdSolution::value_at(double xq) const {
  if (x.size() < 2 || v.size() != x.size()) throw InvalidParams("fd solution: empty grid");
  if (!(xq >= x.front()) || !(xq <= x.back()))
    throw OutOfDomain("fd solution: query outside the grid");
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  std::size_t i = static_cast<std::size_t>(it - x.begin());
  if (i == 0) return v.front();
  if (i == x.size()) return v.back();
  const double t = (xq - x[i - 1]) / (x[i] - x[i - 1]);
  return v[i - 1] + t * (v[i] - v[i - 1]);
}

FdSolution solve_exit_bvp(const ModelSpec& spec, const FunctionSpec& f, double h) {
  return finish(assemble_exit_operator(spec, f, /*zero_source=*/false, h));
}

FdSolution solve_hit_probability_bvp(const ModelSpec& spec, double h) {
  ExitAssembly a = assemble_exit_operator(spec, FunctionSpec::one(), /*zero_source=*/true, h);
  a.rhs.back() = 1.0;  // Dirichlet row: diag stays 1
  return finish(std::move(a));
}

FdSolution solve_limit_bvp(ModelKind kind, double l, double ell, const Regime& regime,
                           const FunctionSpec& f, double h) {
  if (!std::isfinite(l) || !std::isfinite(ell) || !(l < ell))
    throw InvalidGeometry("fd limit: need finite l < ell");
  if (kind == ModelKind::Bessel2 && !(l > 0.0))
    throw InvalidGeometry("fd limit: radial model needs l > 0");
  const double kappa = kind == ModelKind::Bessel2 ? 1.0 : 0.0;
  const std::size_t n_cells = cells_for(ell - l, h);
  if (n_cells + 1 > kMaxRows) throw InvalidParams("fd limit: h produces too many rows");

  std::vector<double> x;
  x.reserve(n_cells + 1);
  x.push_back(l);
  append_uniform(x, l, ell, n_cells);

  const std::size_t n = x.size();
  const double step = (ell - l) / static_cast<double>(n_cells);
  std::vector<double> lower(n, 0.0), diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Row row = interior_row(1.0, kappa, x[i], step);
    lower[i] = row.lower;
    diag[i] = row.diag;
    upper[i] = row.upper;
    rhs[i] = f(x[i]);
  }

  switch (regime.kind) {
    case RegimeKind::Dirichlet:
      break;  // diag 1, rhs 0 already in place
    case RegimeKind::Neumann:
    case RegimeKind::Robin: {
      // Ghost-node elimination of v'(ell) + G v(ell) = 0 (G = 0 for
      // Neumann) against the PDE row at ell, all second order.
      const double G = regime.kind == RegimeKind::Robin ? regime.robin_rate : 0.0;
      lower[n - 1] = -1.0 / (step * step);
      diag[n - 1] = (1.0 + step * G) / (step * step) + kappa * G / (2.0 * ell);
      rhs[n - 1] = f(ell);
      break;
    }
  }

  FdSolution sol;
  sol.v = detail::solve_tridiagonal(std::move(lower), std::move(diag), std::move(upper),
                                    std::move(rhs));
  sol.x = std::move(x);
  return sol;
}

double shell_average(const std::function<double(double)>& a,
                     const std::function<double(double)>& u, double ell, double eps) {
  if (!std::isfinite(ell) || !(ell > 0.0) || !std::isfinite(eps) || !(eps > 0.0))
    throw InvalidParams("shell_average: need ell > 0 and eps > 0");
  const double integral = integrate_adaptive(
      [&](double x) {
        const double ux = u(x);
        return 2.0 * M_PI * x * a(x) * ux * ux;
      },
      ell, ell + eps, 1e-13);
  return integral / eps;
}

double boundary_trace(const std::function<double(double)>& a,
                      const std::function<double(double)>& u, double ell) {
  if (!std::isfinite(ell) || !(ell > 0.0)) throw InvalidParams("boundary_trace: need ell > 0");
  const double ue = u(ell);
  return 2.0 * M_PI * ell * a(ell) * ue * ue;
}

}  // namespace skewlab
