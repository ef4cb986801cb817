#include "skewlab/walk_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "detail_tridiag.hpp"
#include "skewlab/closed_form.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/philox.hpp"
#include "skewlab/summation.hpp"

namespace skewlab {

namespace {

constexpr std::size_t kMaxChainNodes = 50'000'000;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Mean exit time from (a, b) started at x for the unit-variance radial
/// process, one-sided cell. Same algebra as the closed-form module; kept
/// local because the limit chain has no ModelSpec to hand over.
double bessel_cell_mean(double a, double b, double x) {
  const double log_ba = std::log1p((b - a) / a);
  const double amp = (b * b - a * a) / (2.0 * log_ba);
  return amp * std::log1p((x - a) / a) - (x * x - a * a) / 2.0;
}

/// E[time to reach the absorbing end] for a cell with one reflecting end,
/// started at the reflecting end. sigma2 is the local variance of the cell.
double reflected_upper_hold(ModelKind kind, double a, double b, double sigma2) {
  const double v = kind == ModelKind::Line ? reflected_hold_line(a, b) : reflected_hold_bessel(a, b);
  return v / sigma2;
}

double reflected_lower_hold(ModelKind kind, double a, double b, double sigma2) {
  if (kind == ModelKind::Line) return (b - a) * (b - a) / sigma2;
  return ((b * b - a * a) / 2.0 - a * a * std::log1p((b - a) / a)) / sigma2;
}

void append_uniform_nodes(std::vector<double>& node, double a, double b, std::size_t n_cells) {
  const double step = (b - a) / static_cast<double>(n_cells);
  for (std::size_t i = 1; i < n_cells; ++i)
    node.push_back(a + static_cast<double>(i) * step);
  node.push_back(b);  // exactly, so interface and endpoints are grid nodes
}

void check_chain_arrays(const ChainSpec& c) {
  const std::size_t n = c.node.size();
  if (n < 3 || c.p_up.size() != n || c.hold.size() != n)
    throw InvalidParams("chain: need >= 3 nodes and matching p_up/hold sizes");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(c.node[i] < c.node[i + 1]))
      throw InvalidParams("chain: nodes must be strictly increasing");
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(c.p_up[i] > 0.0) || !(c.p_up[i] < 1.0))
      throw InvalidParams("chain: interior p_up must lie in (0, 1)");
    if (!(c.hold[i] > 0.0) || !std::isfinite(c.hold[i]))
      throw InvalidParams("chain: interior holding times must be positive and finite");
  }
  if (c.interface_index != ChainSpec::npos &&
      (c.interface_index == 0 || c.interface_index + 1 >= n))
    throw InvalidParams("chain: interface_index must be an interior node");
  if (c.left == BoundaryBehavior::Reflect && !(c.hold[0] > 0.0 && std::isfinite(c.hold[0])))
    throw InvalidParams("chain: a reflecting node needs a positive holding time");
  if (c.right == BoundaryBehavior::Reflect &&
      !(c.hold[n - 1] > 0.0 && std::isfinite(c.hold[n - 1])))
    throw InvalidParams("chain: a reflecting node needs a positive holding time");
}

// ---------------------------------------------------------------------------
// Sampling tables.
//
// Directions are drawn by comparing 32-bit words against per-node
// thresholds, so the sampled law resolves probabilities to 2^-32; the
// exact-solve routines below use the unquantized p_up instead. Three
// sampling strategies cover the chains we build:
//
//   * explicit threshold at "special" nodes (interface, reflecting ends),
//     where p_up is far from 1/2;
//   * a fair coin bit everywhere p_up quantizes to exactly 1/2, taken from
//     a 64-bit bit buffer. When additionally the accrued increment g is
//     constant along each stretch between special nodes, whole windows of
//     k fair steps collapse into one popcount (the walk cannot reach a
//     special node in fewer steps than its current distance, and
//     intermediate positions do not matter for the accrued value);
//   * geometric thinning for nodes with drift: a candidate step arrives
//     with the maximal drift probability theta_cap; at a candidate the
//     forced direction is accepted with probability theta_i / theta_cap,
//     otherwise a fair bit decides. P(forced) = theta_i + (1 - theta_i)/2
//     per step, which reproduces the per-node law while consuming cheap
//     fair bits on the overwhelming majority of steps.
// ---------------------------------------------------------------------------

std::uint32_t quantize_probability(double p) {
  const double scaled = std::nearbyint(p * 4294967296.0);
  if (scaled >= 4294967295.0) return 0xFFFFFFFFu;
  if (scaled <= 1.0) return 1u;
  return static_cast<std::uint32_t>(scaled);
}

struct ElasticKill {
  bool active = false;
  double rate = 0.0;
};

struct WalkTables {
  std::size_t last = 0;
  std::size_t iface = ChainSpec::npos;
  bool left_absorb = true;
  bool right_absorb = true;
  // elastic killing at a reflecting right node
  bool kill_active = false;
  bool kill_certain = false;
  std::uint32_t kill_threshold = 0;
  // explicit interface draw
  std::uint32_t iface_threshold = 0;
  // per-visit accrued value
  std::vector<double> g;
  // thinning tables (generic mode)
  std::vector<std::uint64_t> accept_threshold;  // in [0, 2^32]; 2^32 = always
  std::vector<std::int8_t> forced_dir;
  bool has_candidates = false;
  double inv_log1m_cand_p = 0.0;
  // window mode (all fair bits, stretch-constant g)
  bool window_mode = false;
  double g_lo_stretch = 0.0;
  double g_hi_stretch = 0.0;
};

bool stretch_constant(const std::vector<double>& g, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin + 1; i < end; ++i)
    if (g[i] != g[begin]) return false;
  return true;
}

WalkTables make_tables(const ChainSpec& chain, std::vector<double> g, const ElasticKill& kill) {
  check_chain_arrays(chain);
  WalkTables t;
  t.last = chain.node.size() - 1;
  t.iface = chain.interface_index;
  t.left_absorb = chain.left == BoundaryBehavior::Absorb;
  t.right_absorb = chain.right == BoundaryBehavior::Absorb;
  if (!t.left_absorb && !t.right_absorb)
    throw InvalidParams("walk: a chain reflecting at both ends never absorbs");
  t.g = std::move(g);
  for (std::size_t i = 0; i <= t.last; ++i)
    if (!std::isfinite(t.g[i]))
      throw UnboundedFunction("walk: non-finite accrued value at node x=" + fmt(chain.node[i]));

  if (kill.active) {
    if (t.right_absorb) throw InvalidParams("walk: elastic killing needs a reflecting upper node");
    if (std::isnan(kill.rate) || kill.rate < 0.0)
      throw InvalidParams("walk: elastic rate must be >= 0 (or infinity)");
    if (std::isinf(kill.rate)) {
      t.kill_active = t.kill_certain = true;
    } else if (kill.rate > 0.0) {
      const double dL = chain.node[t.last] - chain.node[t.last - 1];
      t.kill_active = true;
      t.kill_threshold = quantize_probability(-std::expm1(-kill.rate * dL));
    }
  }

  t.accept_threshold.assign(t.last + 1, 0);
  t.forced_dir.assign(t.last + 1, 1);
  std::vector<std::uint32_t> up_thr(t.last + 1, 0);
  std::uint32_t w_cap = 0;
  for (std::size_t i = 1; i < t.last; ++i) {
    const std::uint32_t thr = quantize_probability(chain.p_up[i]);
    up_thr[i] = thr;
    if (i == t.iface) {
      t.iface_threshold = thr;
      continue;
    }
    const std::int64_t d = static_cast<std::int64_t>(thr) - 0x80000000ll;
    t.forced_dir[i] = d >= 0 ? std::int8_t{1} : std::int8_t{-1};
    w_cap = std::max(w_cap, static_cast<std::uint32_t>(d >= 0 ? d : -d));
  }
  if (w_cap > 0) {
    t.has_candidates = true;
    const double cand_p = static_cast<double>(w_cap) * 0x1.0p-31;
    t.inv_log1m_cand_p = 1.0 / std::log1p(-cand_p);
    for (std::size_t i = 1; i < t.last; ++i) {
      if (i == t.iface) continue;
      const std::int64_t d = static_cast<std::int64_t>(up_thr[i]) - 0x80000000ll;
      const auto w = static_cast<std::uint32_t>(d >= 0 ? d : -d);
      if (w == w_cap) {
        t.accept_threshold[i] = std::uint64_t{1} << 32;
      } else {
        const double a = static_cast<double>(w) / static_cast<double>(w_cap);
        t.accept_threshold[i] =
            static_cast<std::uint64_t>(std::nearbyint(a * 4294967296.0));
      }
    }
  } else {
    // All plain interior nodes are exactly fair: window mode applies when
    // the accrued increment is constant along each stretch.
    bool fair = true;
    for (std::size_t i = 1; i < t.last && fair; ++i)
      if (i != t.iface && up_thr[i] != 0x80000000u) fair = false;
    if (fair) {
      if (t.iface == ChainSpec::npos) {
        if (t.last >= 2 && stretch_constant(t.g, 1, t.last)) {
          t.window_mode = true;
          t.g_lo_stretch = t.g[1];
          t.g_hi_stretch = t.g[1];
        }
      } else if (stretch_constant(t.g, 1, t.iface) &&
                 stretch_constant(t.g, t.iface + 1, t.last)) {
        t.window_mode = true;
        t.g_lo_stretch = t.g[1];
        t.g_hi_stretch = t.g[t.iface + 1];
      }
    }
  }
  return t;
}

std::int64_t geometric_gap(const WalkTables& t, Philox4x32& rng) {
  const double u = 1.0 - rng.next_double();  // in (0, 1]
  const double gap = std::floor(std::log(u) * t.inv_log1m_cand_p);
  if (!(gap >= 0.0)) return 0;
  if (gap >= 9.0e18) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(gap);
}

struct PathResult {
  double value = 0.0;
  std::uint8_t outcome = 0;  // 0 absorbed low, 1 absorbed high, 2 killed
};

PathResult run_path(const WalkTables& t, std::size_t start, Philox4x32& rng) {
  double value = 0.0;
  std::size_t idx = start;
  std::uint64_t bitbuf = 0;
  unsigned nbits = 0;
  std::int64_t countdown =
      t.has_candidates ? geometric_gap(t, rng) : std::numeric_limits<std::int64_t>::max();

  for (;;) {
    if (idx == 0) {
      if (t.left_absorb) return {value, 0};
      value += t.g[0];
      idx = 1;
      continue;
    }
    if (idx == t.last) {
      if (t.right_absorb) return {value, 1};
      if (t.kill_active && (t.kill_certain || rng.next_u32() < t.kill_threshold))
        return {value, 2};
      value += t.g[t.last];
      --idx;
      continue;
    }
    if (idx == t.iface) {
      value += t.g[idx];
      idx = (rng.next_u32() < t.iface_threshold) ? idx + 1 : idx - 1;
      continue;
    }

    if (t.window_mode) {
      std::size_t lo = 0, hi = t.last;
      double gs = t.g_lo_stretch;
      if (t.iface != ChainSpec::npos) {
        if (idx < t.iface) {
          hi = t.iface;
        } else {
          lo = t.iface;
          gs = t.g_hi_stretch;
        }
      }
      if (nbits == 0) {
        bitbuf = rng.next_u64();
        nbits = 64;
      }
      const std::size_t d = std::min(idx - lo, hi - idx);
      if (d >= 2) {
        // k fair steps cannot reach a node at distance > k, so no
        // boundary/interface checks are needed inside the window and each
        // of the k visited nodes accrues the same gs.
        const auto k = static_cast<unsigned>(std::min<std::size_t>(d - 1, nbits));
        const std::uint64_t w = (k >= 64) ? bitbuf : bitbuf & ((std::uint64_t{1} << k) - 1);
        bitbuf = (k >= 64) ? 0 : bitbuf >> k;
        nbits -= k;
        value += gs * static_cast<double>(k);
        idx = static_cast<std::size_t>(static_cast<std::int64_t>(idx) + 2 * std::popcount(w) -
                                       static_cast<std::int64_t>(k));
      } else {
        value += gs;
        idx = (bitbuf & 1u) ? idx + 1 : idx - 1;
        bitbuf >>= 1;
        --nbits;
      }
      continue;
    }

    value += t.g[idx];
    if (countdown == 0) [[unlikely]] {
      countdown = geometric_gap(t, rng);
      if (static_cast<std::uint64_t>(rng.next_u32()) < t.accept_threshold[idx]) {
        idx = (t.forced_dir[idx] > 0) ? idx + 1 : idx - 1;
        continue;
      }
    } else {
      --countdown;
    }
    if (nbits == 0) [[unlikely]] {
      bitbuf = rng.next_u64();
      nbits = 64;
    }
    idx = (bitbuf & 1u) ? idx + 1 : idx - 1;
    bitbuf >>= 1;
    --nbits;
  }
}

void run_block(const WalkTables& t, std::size_t start, std::uint64_t seed, std::uint64_t begin,
               std::uint64_t end, std::vector<double>& values,
               std::vector<std::uint8_t>& outcomes) {
  for (std::uint64_t p = begin; p < end; ++p) {
    Philox4x32 rng{seed, p};
    const PathResult res = run_path(t, start, rng);
    values[p] = res.value;
    outcomes[p] = res.outcome;
  }
}

/// Runs all paths; values/outcomes are indexed by path id, so the result is
/// independent of the thread split.
void run_all(const WalkTables& t, std::size_t start, std::uint64_t n_paths, std::uint64_t seed,
             unsigned n_threads, std::vector<double>& values, std::vector<std::uint8_t>& outcomes) {
  if (n_paths == 0) throw InvalidParams("walk: n_paths must be >= 1");
  values.assign(n_paths, 0.0);
  outcomes.assign(n_paths, 0);
  std::uint64_t T = n_threads ? n_threads : std::max(1u, std::thread::hardware_concurrency());
  T = std::min<std::uint64_t>(T, n_paths);
  if (T <= 1) {
    run_block(t, start, seed, 0, n_paths, values, outcomes);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(T);
  for (std::uint64_t b = 0; b < T; ++b) {
    const std::uint64_t lo = n_paths * b / T;
    const std::uint64_t hi = n_paths * (b + 1) / T;
    workers.emplace_back(run_block, std::cref(t), start, seed, lo, hi, std::ref(values),
                         std::ref(outcomes));
  }
  for (auto& w : workers) w.join();
}

std::vector<double> functional_g(const ChainSpec& chain, const FunctionSpec& f) {
  std::vector<double> g(chain.node.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = f(chain.node[i]) * chain.hold[i];
  return g;
}

ElasticKill kill_of(const ChainSpec& chain, const PathFunctional& functional) {
  switch (functional.killing) {
    case KillingKind::None:
      return {};
    case KillingKind::AbsorbingShell:
      if (chain.right != BoundaryBehavior::Absorb)
        throw InvalidParams("walk: AbsorbingShell needs an absorbing upper node");
      return {};
    case KillingKind::ElasticAtInterface:
      return {true, functional.elastic_rate};
  }
  throw InvalidParams("walk: unknown killing kind");
}

}  // namespace

std::size_t ChainSpec::nearest_index(double x) const {
  if (node.size() < 2) throw InvalidParams("chain: too few nodes");
  if (!std::isfinite(x) || x < node.front() || x > node.back())
    throw OutOfDomain("x=" + fmt(x) + " lies outside the chain span [" + fmt(node.front()) +
                      ", " + fmt(node.back()) + "]");
  const auto it = std::lower_bound(node.begin(), node.end(), x);
  std::size_t i = static_cast<std::size_t>(it - node.begin());
  if (i == node.size() || (i > 0 && x - node[i - 1] < node[i] - x)) --i;
  return i;
}

std::size_t ChainSpec::index_of(double x) const {
  const std::size_t i = nearest_index(x);
  const double tol = 1e-9 * (node.back() - node.front()) + 1e-12;
  if (std::abs(node[i] - x) > tol)
    throw OutOfDomain("x=" + fmt(x) + " is not a grid node; nearest node is " + fmt(node[i]));
  return i;
}

ChainSpec build_chain(const ModelSpec& raw, double h, BoundaryBehavior left,
                      BoundaryBehavior right) {
  const ModelSpec spec = validate(raw);
  if (!std::isfinite(h) || !(h > 0.0)) throw InvalidParams("build_chain: h must be positive");
  const double l = spec.geometry.l;
  const double ell = spec.geometry.ell;
  const double r = spec.geometry.r();
  if (h >= (ell - l) / 4.0)
    throw GridTooCoarse("build_chain: need h < (ell - l)/4 = " + fmt((ell - l) / 4.0) +
                        ", got h = " + fmt(h));
  const auto n_left = static_cast<std::size_t>(std::ceil((ell - l) / h));
  const auto n_right =
      std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(spec.geometry.eps / h)));
  if (n_left + n_right + 1 > kMaxChainNodes)
    throw InvalidParams("build_chain: h produces more than 5e7 nodes");

  ChainSpec chain;
  chain.kind = spec.kind;
  chain.left = left;
  chain.right = right;
  chain.interface_index = n_left;
  chain.node.reserve(n_left + n_right + 1);
  chain.node.push_back(l);
  append_uniform_nodes(chain.node, l, ell, n_left);
  append_uniform_nodes(chain.node, ell, r, n_right);

  const std::size_t last = chain.node.size() - 1;
  chain.p_up.assign(last + 1, 0.0);
  chain.hold.assign(last + 1, 0.0);
  const double step_l = (ell - l) / static_cast<double>(n_left);
  const double step_r = spec.geometry.eps / static_cast<double>(n_right);
  const double alpha = spec.params.alpha;
  const double lambda = spec.params.lambda;

  for (std::size_t i = 1; i < last; ++i) {
    const double xm = chain.node[i - 1], x = chain.node[i], xp = chain.node[i + 1];
    if (i == n_left) {
      // Scale increments weighted by the one-sided slopes 1/(1-alpha), 1/alpha.
      const double ds_lo = (spec.kind == ModelKind::Line ? x - xm : std::log1p((x - xm) / xm)) /
                           (1.0 - alpha);
      const double ds_hi =
          (spec.kind == ModelKind::Line ? xp - x : std::log1p((xp - x) / x)) / alpha;
      chain.p_up[i] = ds_lo / (ds_lo + ds_hi);
      chain.hold[i] = mean_exit_interval(spec, xm, xp, x);
    } else if (spec.kind == ModelKind::Line) {
      // One-sided uniform cells are congruent: exact fair step, one hold
      // per side. (Computing these from the rounded node positions instead
      // would perturb each by ~1 ulp without making the chain any more
      // faithful to the diffusion.)
      chain.p_up[i] = 0.5;
      const double step = i < n_left ? step_l : step_r;
      chain.hold[i] = step * step / (i < n_left ? 1.0 : lambda);
    } else {
      const double ds_lo = std::log1p((x - xm) / xm);
      const double ds_hi = std::log1p((xp - x) / x);
      chain.p_up[i] = ds_lo / (ds_lo + ds_hi);
      chain.hold[i] = mean_exit_interval(spec, xm, xp, x);
    }
  }
  if (left == BoundaryBehavior::Reflect)
    chain.hold[0] = reflected_lower_hold(spec.kind, chain.node[0], chain.node[1], 1.0);
  if (right == BoundaryBehavior::Reflect)
    chain.hold[last] =
        reflected_upper_hold(spec.kind, chain.node[last - 1], chain.node[last], lambda);
  check_chain_arrays(chain);
  return chain;
}

ChainSpec build_limit_chain(ModelKind kind, double l, double ell, double h,
                            BoundaryBehavior right) {
  if (!std::isfinite(l) || !std::isfinite(ell) || !(l < ell))
    throw InvalidGeometry("build_limit_chain: need finite l < ell");
  if (kind == ModelKind::Bessel2 && !(l > 0.0))
    throw InvalidGeometry("build_limit_chain: radial model needs l > 0");
  if (!std::isfinite(h) || !(h > 0.0))
    throw InvalidParams("build_limit_chain: h must be positive");
  if (h >= (ell - l) / 4.0)
    throw GridTooCoarse("build_limit_chain: need h < (ell - l)/4 = " + fmt((ell - l) / 4.0) +
                        ", got h = " + fmt(h));
  const auto n = static_cast<std::size_t>(std::ceil((ell - l) / h));
  if (n + 1 > kMaxChainNodes) throw InvalidParams("build_limit_chain: h produces too many nodes");

  ChainSpec chain;
  chain.kind = kind;
  chain.left = BoundaryBehavior::Absorb;
  chain.right = right;
  chain.node.reserve(n + 1);
  chain.node.push_back(l);
  append_uniform_nodes(chain.node, l, ell, n);

  const std::size_t last = n;
  chain.p_up.assign(last + 1, 0.0);
  chain.hold.assign(last + 1, 0.0);
  const double step = (ell - l) / static_cast<double>(n);
  for (std::size_t i = 1; i < last; ++i) {
    if (kind == ModelKind::Line) {
      chain.p_up[i] = 0.5;
      chain.hold[i] = step * step;
    } else {
      const double xm = chain.node[i - 1], x = chain.node[i], xp = chain.node[i + 1];
      const double ds_lo = std::log1p((x - xm) / xm);
      const double ds_hi = std::log1p((xp - x) / x);
      chain.p_up[i] = ds_lo / (ds_lo + ds_hi);
      chain.hold[i] = bessel_cell_mean(xm, xp, x);
    }
  }
  if (right == BoundaryBehavior::Reflect)
    chain.hold[last] = reflected_upper_hold(kind, chain.node[last - 1], ell, 1.0);
  check_chain_arrays(chain);
  return chain;
}

ExitStats simulate_exit(const ChainSpec& chain, double x0, std::uint64_t n_paths,
                        std::uint64_t seed, unsigned n_threads) {
  const WalkTables t = make_tables(chain, chain.hold, {});
  std::vector<double> values;
  std::vector<std::uint8_t> outcomes;
  run_all(t, chain.index_of(x0), n_paths, seed, n_threads, values, outcomes);
  ExitStats stats;
  const MeanStdErr m = mean_and_std_error(values);
  stats.time = {m.mean, m.std_error, n_paths, seed};
  for (std::uint8_t o : outcomes) stats.n_hit_upper += o == 1;
  stats.hit_upper_fraction = static_cast<double>(stats.n_hit_upper) / static_cast<double>(n_paths);
  return stats;
}

EstimatorResult estimate_killed_functional(const ChainSpec& chain, double x0,
                                           const PathFunctional& functional,
                                           std::uint64_t n_paths, std::uint64_t seed,
                                           unsigned n_threads) {
  const WalkTables t = make_tables(chain, functional_g(chain, functional.f),
                                   kill_of(chain, functional));
  std::vector<double> values;
  std::vector<std::uint8_t> outcomes;
  run_all(t, chain.index_of(x0), n_paths, seed, n_threads, values, outcomes);
  const MeanStdErr m = mean_and_std_error(values);
  return {m.mean, m.std_error, n_paths, seed};
}

EstimatorResult simulate_reflected_elastic(const ModelSpec& spec, double G,
                                           const FunctionSpec& f, double x0,
                                           std::uint64_t n_paths, std::uint64_t seed, double h,
                                           unsigned n_threads) {
  const ModelSpec checked = validate(spec);
  const ChainSpec chain = build_limit_chain(checked.kind, checked.geometry.l,
                                            checked.geometry.ell, h, BoundaryBehavior::Reflect);
  PathFunctional functional;
  functional.f = f;
  functional.killing = KillingKind::ElasticAtInterface;
  functional.elastic_rate = G;
  return estimate_killed_functional(chain, x0, functional, n_paths, seed, n_threads);
}

std::vector<double> chain_hit_upper_probability(const ChainSpec& chain) {
  check_chain_arrays(chain);
  if (chain.left != BoundaryBehavior::Absorb || chain.right != BoundaryBehavior::Absorb)
    throw InvalidParams("hit probability needs both ends absorbing");
  const std::size_t n = chain.node.size();
  std::vector<double> lower(n, 0.0), diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
  rhs[n - 1] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    lower[i] = -(1.0 - chain.p_up[i]);
    upper[i] = -chain.p_up[i];
  }
  return detail::solve_tridiagonal(std::move(lower), std::move(diag), std::move(upper),
                                   std::move(rhs));
}

std::vector<double> chain_killed_functional_value(const ChainSpec& chain,
                                                  const PathFunctional& functional) {
  check_chain_arrays(chain);
  const ElasticKill kill = kill_of(chain, functional);
  if (chain.left == BoundaryBehavior::Reflect && chain.right == BoundaryBehavior::Reflect)
    throw InvalidParams("walk: a chain reflecting at both ends never absorbs");
  if (kill.active) {
    if (chain.right != BoundaryBehavior::Reflect)
      throw InvalidParams("walk: elastic killing needs a reflecting upper node");
    if (std::isnan(kill.rate) || kill.rate < 0.0)
      throw InvalidParams("walk: elastic rate must be >= 0 (or infinity)");
  }
  const std::vector<double> g = functional_g(chain, functional.f);
  for (double v : g)
    if (!std::isfinite(v)) throw UnboundedFunction("walk: non-finite accrued value");

  const std::size_t n = chain.node.size();
  std::vector<double> lower(n, 0.0), diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    lower[i] = -(1.0 - chain.p_up[i]);
    upper[i] = -chain.p_up[i];
    rhs[i] = g[i];
  }
  if (chain.left == BoundaryBehavior::Reflect) {
    upper[0] = -1.0;
    rhs[0] = g[0];
  }
  if (chain.right == BoundaryBehavior::Reflect) {
    // V_n = kappa (g_n + V_{n-1}) with kappa the per-visit survival factor.
    double kappa = 1.0;
    if (kill.active) {
      const double dL = chain.node[n - 1] - chain.node[n - 2];
      kappa = std::isinf(kill.rate) ? 0.0 : std::exp(-kill.rate * dL);
    }
    lower[n - 1] = -kappa;
    rhs[n - 1] = kappa * g[n - 1];
  }
  return detail::solve_tridiagonal(std::move(lower), std::move(diag), std::move(upper),
                                   std::move(rhs));
}

std::vector<double> chain_mean_absorption_time(const ChainSpec& chain) {
  PathFunctional functional;
  functional.f = FunctionSpec::one();
  functional.killing = KillingKind::None;
  return chain_killed_functional_value(chain, functional);
}

}  // namespace skewlab
