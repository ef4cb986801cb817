#pragma once

#include <cstdint>
#include <vector>

#include "skewlab/function_catalog.hpp"
#include "skewlab/model.hpp"

namespace skewlab {

enum class BoundaryBehavior { Absorb, Reflect };

/// Embedded birth-death chain of a diffusion on a fixed grid.
///
/// The chain moves between neighboring nodes; at node i it steps up with
/// probability p_up[i] and accrues the deterministic holding time hold[i]
/// per visit. Because p_up comes from scale-function increments and hold
/// from the closed-form mean exit time of the two-neighbor cell, the chain
/// reproduces first moments of the diffusion exactly at the nodes: no
/// time-discretization error enters, only Monte Carlo noise.
struct ChainSpec {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  ModelKind kind = ModelKind::Line;
  std::vector<double> node;  // strictly increasing, size >= 3
  std::vector<double> p_up;  // up-move probability, used at interior nodes
  std::vector<double> hold;  // expected sojourn per visit, 0 at absorbing ends
  std::size_t interface_index = npos;  // node sitting exactly at ell, if any
  BoundaryBehavior left = BoundaryBehavior::Absorb;
  BoundaryBehavior right = BoundaryBehavior::Absorb;

  std::size_t size() const { return node.size(); }
  /// Index of the node nearest x; throws OutOfDomain when x is farther
  /// from every node than a small snap tolerance.
  std::size_t index_of(double x) const;
  /// Index of the node nearest x for any x inside the span (no snap
  /// tolerance); callers that accept O(h) displacement use this.
  std::size_t nearest_index(double x) const;
};

/// Chain for the two-sided exit problem on (l, r) with the interface as a
/// grid node. Per-side uniform grids with at least ceil(side/h) cells; the
/// shell side keeps a floor of 4 cells, so h coarser than eps/4 refines the
/// shell rather than failing. Throws GridTooCoarse when h >= (ell - l)/4,
/// InvalidParams for nonpositive h.
ChainSpec build_chain(const ModelSpec& spec, double h,
                      BoundaryBehavior left = BoundaryBehavior::Absorb,
                      BoundaryBehavior right = BoundaryBehavior::Absorb);

/// Chain for the unit-variance limit process on (l, ell): absorbing at l,
/// reflecting (by default) at ell. No interface node.
ChainSpec build_limit_chain(ModelKind kind, double l, double ell, double h,
                            BoundaryBehavior right = BoundaryBehavior::Reflect);

struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_paths = 0;
  std::uint64_t seed = 0;
};

struct ExitStats {
  EstimatorResult time;  // mean exit time estimate
  double hit_upper_fraction = 0.0;
  std::uint64_t n_hit_upper = 0;
};

/// How a path ends beyond plain absorption.
enum class KillingKind {
  None,                // run to absorption, no killing
  AbsorbingShell,      // both ends absorb; the upper end is the shell
  ElasticAtInterface,  // reflecting upper node kills with rate elastic_rate
};

/// Path functional E_x[ sum_visits f(node) * hold ], the chain analogue of
/// E_x int_0^tau f(X_t) dt. Elastic killing charges each visit to the
/// reflecting node a local-time increment dL equal to the adjacent grid
/// step and kills there with probability 1 - exp(-rate * dL) before the
/// holding time accrues; rate may be +infinity (absorption at the node).
struct PathFunctional {
  FunctionSpec f = FunctionSpec::one();
  KillingKind killing = KillingKind::AbsorbingShell;
  double elastic_rate = 0.0;
};

/// Monte Carlo over n_paths independent chain paths started at the node
/// nearest x0. Results are bitwise reproducible for a fixed seed regardless
/// of n_threads (one counter-based stream per path, fixed-shape reduction);
/// n_threads = 0 uses the hardware count.
ExitStats simulate_exit(const ChainSpec& chain, double x0, std::uint64_t n_paths,
                        std::uint64_t seed, unsigned n_threads = 0);

EstimatorResult estimate_killed_functional(const ChainSpec& chain, double x0,
                                           const PathFunctional& functional,
                                           std::uint64_t n_paths, std::uint64_t seed,
                                           unsigned n_threads = 0);

/// Elastic-killing estimator for the limit process: builds the limit chain
/// on (l, ell) from spec's kind and geometry (skew parameters are not used;
/// the limit process has no interface), reflects at ell, kills there at
/// rate G against boundary local time, absorbs at l, and accumulates f.
EstimatorResult simulate_reflected_elastic(const ModelSpec& spec, double G,
                                           const FunctionSpec& f, double x0,
                                           std::uint64_t n_paths, std::uint64_t seed,
                                           double h, unsigned n_threads = 0);

/// Exact (non-Monte-Carlo) chain quantities via the tridiagonal first-step
/// equations, one value per node. These are the yardsticks the samplers
/// are tested against.
/// Probability of absorbing at the upper end; requires both ends absorbing.
std::vector<double> chain_hit_upper_probability(const ChainSpec& chain);
/// Expected total holding time to absorption; allows one reflecting end.
std::vector<double> chain_mean_absorption_time(const ChainSpec& chain);
/// Expected value of the killed path functional, the exact counterpart of
/// estimate_killed_functional.
std::vector<double> chain_killed_functional_value(const ChainSpec& chain,
                                                  const PathFunctional& functional);

}  // namespace skewlab
