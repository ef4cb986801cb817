#include "skewlab/sweep.hpp"

#include <cmath>
#include <sstream>

#include "skewlab/closed_form.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/fd_oracle.hpp"

namespace skewlab {

namespace {

std::function<double(double)> as_function(const FunctionSpec& f) {
  return [f](double x) { return f(x); };
}

bool is_unit_source(const FunctionSpec& f) { return f.name() == "one"; }

/// Closed-form value of E_x int f dt for the eps-model: the cached formula
/// when f = 1, the Green-kernel quadrature otherwise.
double closed_functional(const ModelSpec& spec, const FunctionSpec& f, double x) {
  if (is_unit_source(f)) return mean_exit(spec, x);
  return green_solution(spec, as_function(f), x);
}

/// Limit-problem value: closed form when f = 1, a fine finite-difference
/// solve otherwise.
double limit_functional(ModelKind kind, const Geometry& geometry, const Regime& regime,
                        const FunctionSpec& f, double x) {
  if (is_unit_source(f)) return limit_solution(kind, geometry, regime, x);
  const FdSolution sol = solve_limit_bvp(kind, geometry.l, geometry.ell, regime, f, 2e-4);
  return sol.value_at(x);
}

double robin_rate_of(const Regime& regime) {
  switch (regime.kind) {
    case RegimeKind::Neumann:
      return 0.0;
    case RegimeKind::Robin:
      return regime.robin_rate;
    case RegimeKind::Dirichlet:
      return std::numeric_limits<double>::infinity();
  }
  throw InvalidParams("unknown regime");
}

}  // namespace

Report run_eval(const ModelSpec& raw, const std::vector<double>& xs, const EvalOptions& opt) {
  const ModelSpec spec = validate(raw);
  Report report;

  FdSolution fd;
  if (opt.with_fd) fd = solve_exit_bvp(spec, opt.f, opt.fd_h);
  ChainSpec chain;
  if (opt.mc_paths > 0) chain = build_chain(spec, opt.mc_h);

  for (std::size_t ix = 0; ix < xs.size(); ++ix) {
    const double x = xs[ix];
    ReportRow row;
    row.kind = to_string(spec.kind);
    row.eps = spec.geometry.eps;
    row.alpha = spec.params.alpha;
    row.lambda = spec.params.lambda;
    row.x = x;
    row.phi = exit_prob(spec, x);
    row.v_closed = closed_functional(spec, opt.f, x);
    if (opt.with_fd) row.v_fd = fd.value_at(x);
    if (opt.mc_paths > 0) {
      PathFunctional functional;
      functional.f = opt.f;
      functional.killing = KillingKind::AbsorbingShell;
      const double x0 = chain.node[chain.nearest_index(x)];
      const EstimatorResult mc = estimate_killed_functional(
          chain, x0, functional, opt.mc_paths, opt.seed + ix, opt.n_threads);
      row.v_mc = mc.mean;
      row.mc_se = mc.std_error;
    }
    report.add_row(std::move(row));
  }
  return report;
}

Report run_sweep(const SweepRequest& req) {
  const Regime regime = classify_regime(req.schedule);  // throws when inadmissible
  if (req.k_count < 1 || !std::isfinite(req.eps0) || !(req.eps0 > 0.0))
    throw InvalidParams("sweep: need k_count >= 1 and eps0 > 0");
  const double C = limit_coefficient(req.kind, Geometry{req.l, req.ell, req.eps0}, regime);

  Report report;
  for (int k = 0; k < req.k_count; ++k) {
    const double eps_k = std::ldexp(req.eps0, -k);
    const double alpha_k = req.schedule.alpha_at(eps_k);
    const double lambda_k = req.schedule.lambda_at(eps_k);
    if (!(alpha_k > 0.0 && alpha_k < 1.0)) {
      std::ostringstream os;
      os << "sweep: schedule gives alpha=" << alpha_k << " outside (0, 1) at eps=" << eps_k;
      throw InvalidParams(os.str());
    }
    const ModelSpec spec =
        validate({req.kind, Geometry{req.l, req.ell, eps_k}, SkewParams{alpha_k, lambda_k}});

    FdSolution fd;
    if (req.with_fd) fd = solve_exit_bvp(spec, FunctionSpec::one(), req.fd_h);
    ChainSpec chain;
    if (req.mc_paths > 0) chain = build_chain(spec, req.mc_h);

    for (std::size_t ix = 0; ix < req.xs.size(); ++ix) {
      const double x = req.xs[ix];
      ReportRow row;
      row.kind = to_string(req.kind);
      row.eps = eps_k;
      row.alpha = alpha_k;
      row.lambda = lambda_k;
      row.x = x;
      row.phi = exit_prob(spec, x);
      row.v_closed = mean_exit(spec, x);
      row.v_limit = limit_solution(req.kind, spec.geometry, regime, x);
      row.abs_err = std::abs(row.v_closed - row.v_limit);
      row.regime = to_string(regime.kind);
      row.C = C;
      row.cond_alpha_eps_over_lambda = req.schedule.condition_at(eps_k);
      if (req.with_fd) row.v_fd = fd.value_at(x);
      if (req.mc_paths > 0) {
        PathFunctional functional;  // f = one
        functional.killing = KillingKind::AbsorbingShell;
        const double x0 = chain.node[chain.nearest_index(x)];
        const EstimatorResult mc = estimate_killed_functional(
            chain, x0, functional, req.mc_paths,
            req.seed + 1000 * static_cast<std::uint64_t>(k) + ix, req.n_threads);
        row.v_mc = mc.mean;
        row.mc_se = mc.std_error;
      }
      report.add_row(std::move(row));
    }
  }
  return report;
}

double TheoremSidePair::z() const {
  const double se = std::hypot(model_side.std_error, limit_side.std_error);
  const double diff = std::abs(model_side.mean - limit_side.mean);
  if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / se;
}

std::vector<TheoremSidePair> verify_limit_theorem(const ModelSpec& eps_spec, const Regime& regime,
                                                  const FunctionSpec& f,
                                                  const std::vector<double>& xs,
                                                  std::uint64_t n_paths, double h,
                                                  std::uint64_t seed, unsigned n_threads) {
  const ModelSpec spec = validate(eps_spec);
  const double G = robin_rate_of(regime);
  const ChainSpec model_chain = build_chain(spec, h);
  PathFunctional model_functional;
  model_functional.f = f;
  model_functional.killing = KillingKind::AbsorbingShell;

  std::vector<TheoremSidePair> pairs;
  pairs.reserve(xs.size());
  for (std::size_t ix = 0; ix < xs.size(); ++ix) {
    TheoremSidePair pair;
    pair.x = xs[ix];
    const double x0 = model_chain.node[model_chain.nearest_index(pair.x)];
    pair.model_side = estimate_killed_functional(model_chain, x0, model_functional, n_paths,
                                                 seed + 2 * ix, n_threads);
    pair.limit_side =
        simulate_reflected_elastic(spec, G, f, pair.x, n_paths, seed + 2 * ix + 1, h, n_threads);
    pairs.push_back(pair);
  }
  return pairs;
}

Report theorem_report(const ModelSpec& eps_spec, const Regime& regime, const FunctionSpec& f,
                      const std::vector<TheoremSidePair>& pairs) {
  const ModelSpec spec = validate(eps_spec);
  Report report;
  const double C = limit_coefficient(spec.kind, spec.geometry, regime);
  for (const TheoremSidePair& pair : pairs) {
    ReportRow model_row;
    model_row.kind = to_string(spec.kind);
    model_row.eps = spec.geometry.eps;
    model_row.alpha = spec.params.alpha;
    model_row.lambda = spec.params.lambda;
    model_row.x = pair.x;
    model_row.phi = exit_prob(spec, pair.x);
    model_row.v_closed = closed_functional(spec, f, pair.x);
    model_row.v_mc = pair.model_side.mean;
    model_row.mc_se = pair.model_side.std_error;
    report.add_row(std::move(model_row));

    ReportRow limit_row;
    limit_row.kind = to_string(spec.kind);
    limit_row.x = pair.x;
    limit_row.regime = to_string(regime.kind);
    limit_row.C = C;
    limit_row.v_limit = limit_functional(spec.kind, spec.geometry, regime, f, pair.x);
    limit_row.v_mc = pair.limit_side.mean;
    limit_row.mc_se = pair.limit_side.std_error;
    limit_row.abs_err = std::abs(pair.model_side.mean - pair.limit_side.mean);
    report.add_row(std::move(limit_row));
  }
  return report;
}

Report run_selftest(std::uint64_t seed) {
  Report report;

  // Closed form, finite differences, and Monte Carlo on one spec per kind.
  {
    EvalOptions opt;
    opt.with_fd = true;
    opt.fd_h = 1e-3;
    opt.mc_paths = 2000;
    opt.mc_h = 0.05;
    opt.seed = seed;
    const ModelSpec line{ModelKind::Line, Geometry{0.0, 1.0, 0.25}, SkewParams{0.3, 2.0}};
    Report line_eval = run_eval(line, {0.25, 0.5, 0.75}, opt);
    for (ReportRow row : line_eval.rows()) report.add_row(std::move(row));
    const ModelSpec radial{ModelKind::Bessel2, Geometry{0.5, 1.0, 0.25}, SkewParams{0.6, 0.5}};
    opt.seed = seed + 101;
    Report radial_eval = run_eval(radial, {0.6, 0.75, 0.9}, opt);
    for (ReportRow row : radial_eval.rows()) report.add_row(std::move(row));
  }

  // A short admissible sweep (deterministic columns only).
  {
    SweepRequest sweep;
    sweep.kind = ModelKind::Line;
    sweep.schedule = Schedule{1.0, 1.0, 1.0, 0.0};  // alpha = eps: Robin with G = 1
    sweep.eps0 = 0.2;
    sweep.k_count = 3;
    sweep.xs = {0.5};
    Report sweep_report = run_sweep(sweep);
    for (ReportRow row : sweep_report.rows()) report.add_row(std::move(row));
  }

  // A miniature two-sided limit check.
  {
    const double eps = 0.05;
    const ModelSpec spec{ModelKind::Line, Geometry{0.0, 1.0, eps},
                         SkewParams{eps, std::sqrt(eps)}};
    const Regime regime = Regime::robin(1.0);
    const auto pairs = verify_limit_theorem(spec, regime, FunctionSpec::one(), {0.5}, 1000,
                                            0.02, seed + 202);
    Report theorem = theorem_report(spec, regime, FunctionSpec::one(), pairs);
    for (ReportRow row : theorem.rows()) report.add_row(std::move(row));
  }
  return report;
}

}  // namespace skewlab
