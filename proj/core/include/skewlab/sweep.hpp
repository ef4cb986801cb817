#pragma once

#include <cstdint>
#include <vector>

#include "skewlab/function_catalog.hpp"
#include "skewlab/model.hpp"
#include "skewlab/report.hpp"
#include "skewlab/walk_engine.hpp"

namespace skewlab {

/// Options for evaluating one spec at a list of points.
struct EvalOptions {
  FunctionSpec f = FunctionSpec::one();
  bool with_fd = false;
  double fd_h = 1e-3;
  std::uint64_t mc_paths = 0;  // 0 disables the Monte Carlo column
  double mc_h = 2e-3;
  std::uint64_t seed = 1;
  unsigned n_threads = 0;
};

/// Closed-form values (exit probability and the f-functional) at each x,
/// with optional finite-difference and Monte Carlo columns.
Report run_eval(const ModelSpec& spec, const std::vector<double>& xs, const EvalOptions& opt);

/// Shrinking-shell sweep: eps_k = eps0 * 2^-k for k = 0..k_count-1 with
/// alpha, lambda tied to eps through the schedule. Each row carries the
/// closed-form value, the limit value for the schedule's regime, their
/// absolute difference, and the admissibility ratio alpha*eps/lambda.
/// Throws InadmissibleSchedule when the schedule violates
/// alpha*eps/lambda -> 0, InvalidParams when it pushes alpha out of (0, 1).
struct SweepRequest {
  ModelKind kind = ModelKind::Line;
  double l = 0.0;
  double ell = 1.0;
  Schedule schedule;
  double eps0 = 0.2;
  int k_count = 9;
  std::vector<double> xs;
  bool with_fd = false;
  double fd_h = 1e-3;
  std::uint64_t mc_paths = 0;
  double mc_h = 2e-3;
  std::uint64_t seed = 1;
  unsigned n_threads = 0;
};

Report run_sweep(const SweepRequest& req);

/// Two-sided Monte Carlo check of the killing limit at a fixed eps: the
/// eps-model functional E_x int_0^tau f(X_t) dt (absorbing shell) against
/// the elastic-killed reflected functional of the limit process, whose
/// killing rate is read off the regime (Neumann 0, Robin G, Dirichlet
/// infinite). Both sides are estimated from independent path ensembles.
struct TheoremSidePair {
  double x = 0.0;
  EstimatorResult model_side;  // eps-model, absorbing shell
  EstimatorResult limit_side;  // limit process, elastic killing
  double z() const;            // |difference| / combined standard error
};

std::vector<TheoremSidePair> verify_limit_theorem(const ModelSpec& eps_spec, const Regime& regime,
                                                  const FunctionSpec& f,
                                                  const std::vector<double>& xs,
                                                  std::uint64_t n_paths, double h,
                                                  std::uint64_t seed, unsigned n_threads = 0);

/// Report form of the pairs: per x one row for the eps-model side (its MC
/// estimate next to the closed-form value) and one for the limit side (MC
/// estimate next to the limit solution; abs_err = |lhs - rhs|).
Report theorem_report(const ModelSpec& eps_spec, const Regime& regime, const FunctionSpec& f,
                      const std::vector<TheoremSidePair>& pairs);

/// Deterministic miniature battery exercised by the selftest subcommand:
/// fixed specs, all columns populated. The CSV body is a pure function of
/// the seed.
Report run_selftest(std::uint64_t seed);

}  // namespace skewlab
