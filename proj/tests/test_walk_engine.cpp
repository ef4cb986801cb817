#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "skewlab/closed_form.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/walk_engine.hpp"

using namespace skewlab;

namespace {

const ModelSpec kLine{ModelKind::Line, Geometry{0.0, 1.0, 0.25}, SkewParams{0.3, 2.0}};
const ModelSpec kBessel{ModelKind::Bessel2, Geometry{0.5, 1.0, 0.25}, SkewParams{0.6, 0.5}};

double max_abs_diff(const std::vector<double>& got,
                    const std::vector<double>& want) {
  REQUIRE(got.size() == want.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i)
    worst = std::max(worst, std::abs(got[i] - want[i]));
  return worst;
}

}  // namespace

TEST_CASE("chains are well-formed grids with the interface as a node") {
  for (const ModelSpec& spec : {kLine, kBessel}) {
    const ChainSpec chain = build_chain(spec, 0.05);
    const Geometry& g = spec.geometry;
    REQUIRE(chain.size() >= 3);
    CHECK(chain.node.front() == g.l);
    CHECK(chain.node.back() == doctest::Approx(g.r()).epsilon(1e-14));
    REQUIRE(chain.interface_index != ChainSpec::npos);
    CHECK(chain.node[chain.interface_index] == g.ell);
    for (std::size_t i = 1; i < chain.size(); ++i)
      CHECK(chain.node[i] > chain.node[i - 1]);
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
      CHECK(chain.p_up[i] > 0.0);
      CHECK(chain.p_up[i] < 1.0);
      CHECK(chain.hold[i] > 0.0);
    }
    CHECK(chain.hold.front() == 0.0);
    CHECK(chain.hold.back() == 0.0);
  }
}

TEST_CASE("line chains away from the interface are symmetric random walks") {
  const ChainSpec chain = build_chain(kLine, 0.05);
  for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
    if (i == chain.interface_index) continue;
    CHECK(chain.p_up[i] == 0.5);  // exact, not approximate
  }
}

TEST_CASE("a coarse shell keeps at least four cells") {
  const ChainSpec chain = build_chain(kLine, 0.2);  // eps/h barely 1 cell
  std::size_t shell_cells = chain.size() - 1 - chain.interface_index;
  CHECK(shell_cells >= 4);
}

TEST_CASE("grid must resolve the bulk side") {
  CHECK_THROWS_AS(build_chain(kLine, 0.25), GridTooCoarse);
  CHECK_THROWS_AS(build_chain(kLine, 0.0), InvalidParams);
  CHECK_THROWS_AS(build_chain(kLine, -0.1), InvalidParams);
}

TEST_CASE("node lookup snaps exactly and nearest lookup rounds inside the span") {
  const ChainSpec chain = build_chain(kLine, 0.05);
  CHECK(chain.index_of(chain.node[3]) == 3);
  CHECK(chain.index_of(1.0) == chain.interface_index);
  CHECK_THROWS_AS(chain.index_of(chain.node[3] + 0.02), OutOfDomain);
  CHECK(chain.nearest_index(chain.node[3] + 0.01) == 3);
  CHECK(chain.nearest_index(chain.node[3] + 0.04) == 4);
  CHECK(chain.nearest_index(chain.node.front()) == 0);
  CHECK(chain.nearest_index(chain.node.back()) == chain.size() - 1);
  CHECK_THROWS_AS(chain.nearest_index(-5.0), OutOfDomain);
  CHECK_THROWS_AS(chain.nearest_index(5.0), OutOfDomain);
}

TEST_CASE("first-step equations reproduce the closed forms at every node") {
  for (const ModelSpec& spec : {kLine, kBessel}) {
    const ChainSpec chain = build_chain(spec, 0.02);
    ExitQuantities cf(spec);
    std::vector<double> phi_want(chain.size()), time_want(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i) {
      phi_want[i] = cf.exit_prob(chain.node[i]);
      time_want[i] = cf.mean_exit(chain.node[i]);
    }
    CHECK(max_abs_diff(chain_hit_upper_probability(chain), phi_want) < 1e-12);
    CHECK(max_abs_diff(chain_mean_absorption_time(chain), time_want) < 1e-12);
  }
}

TEST_CASE("limit chain solves match the limit solution exactly") {
  // Reflecting chain absorbed at l only: the Neumann limit solution.
  for (ModelKind kind : {ModelKind::Line, ModelKind::Bessel2}) {
    const double l = kind == ModelKind::Line ? 0.0 : 0.5;
    const Geometry geometry{l, 1.0, 0.1};
    const ChainSpec chain = build_limit_chain(kind, l, 1.0, 0.02);
    const std::vector<double> times = chain_mean_absorption_time(chain);
    double worst = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const double want = limit_solution(kind, geometry, Regime::neumann(), chain.node[i]);
      worst = std::max(worst, std::abs(times[i] - want));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("elastic killing at the reflecting node spans both extreme regimes") {
  const double inf = std::numeric_limits<double>::infinity();
  for (ModelKind kind : {ModelKind::Line, ModelKind::Bessel2}) {
    const double l = kind == ModelKind::Line ? 0.0 : 0.5;
    const Geometry geometry{l, 1.0, 0.1};
    const ChainSpec chain = build_limit_chain(kind, l, 1.0, 0.02);
    PathFunctional functional;
    functional.killing = KillingKind::ElasticAtInterface;

    functional.elastic_rate = 0.0;  // no killing: Neumann
    std::vector<double> v0 = chain_killed_functional_value(chain, functional);
    functional.elastic_rate = inf;  // certain killing: Dirichlet
    std::vector<double> vinf = chain_killed_functional_value(chain, functional);
    double worst0 = 0.0, worstinf = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      worst0 = std::max(worst0, std::abs(v0[i] - limit_solution(kind, geometry,
                                                               Regime::neumann(),
                                                               chain.node[i])));
      worstinf = std::max(worstinf,
                          std::abs(vinf[i] - limit_solution(kind, geometry,
                                                            Regime::dirichlet(),
                                                            chain.node[i])));
    }
    CHECK(worst0 < 1e-12);
    CHECK(worstinf < 1e-12);
  }
}

TEST_CASE("elastic killing converges first order to the robin limit solution") {
  const Geometry geometry{0.0, 1.0, 0.1};
  PathFunctional functional;
  functional.killing = KillingKind::ElasticAtInterface;
  functional.elastic_rate = 1.0;
  const double want = limit_solution(ModelKind::Line, geometry, Regime::robin(1.0), 0.5);
  double prev_err = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double h = 0.02 / (1 << k);
    const ChainSpec chain = build_limit_chain(ModelKind::Line, 0.0, 1.0, h);
    const std::vector<double> v = chain_killed_functional_value(chain, functional);
    const double err = std::abs(v[chain.index_of(0.5)] - want);
    if (k > 0) CHECK(err < 0.7 * prev_err);  // at least first-order decay
    prev_err = err;
  }
  CHECK(prev_err < 2e-3);
}

TEST_CASE("exit sampler agrees with the exact chain quantities") {
  for (const ModelSpec& spec : {kLine, kBessel}) {
    // h chosen so 0.75 is a grid node for both geometries.
    const ChainSpec chain = build_chain(spec, 0.025);
    const std::size_t start = chain.index_of(0.75);
    const std::vector<double> phi = chain_hit_upper_probability(chain);
    const std::vector<double> times = chain_mean_absorption_time(chain);

    const std::uint64_t n = 20000;
    const ExitStats stats = simulate_exit(chain, 0.75, n, 20240817);
    const double p = phi[start];
    const double se_p = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    CHECK(std::abs(stats.hit_upper_fraction - p) < 4.0 * se_p);
    CHECK(std::abs(stats.time.mean - times[start]) < 4.0 * stats.time.std_error);
    CHECK(stats.time.std_error > 0.0);
    CHECK(stats.n_hit_upper ==
          static_cast<std::uint64_t>(stats.hit_upper_fraction * n + 0.5));
  }
}

TEST_CASE("killed-functional sampler agrees with its exact counterpart") {
  for (const ModelSpec& spec : {kLine, kBessel}) {
    const ChainSpec chain = build_chain(spec, 0.02);
    PathFunctional functional;
    functional.f = FunctionSpec::linear();
    functional.killing = KillingKind::AbsorbingShell;
    const std::vector<double> exact = chain_killed_functional_value(chain, functional);
    const EstimatorResult mc =
        estimate_killed_functional(chain, 0.6, functional, 20000, 99);
    CHECK(std::abs(mc.mean - exact[chain.index_of(0.6)]) < 4.0 * mc.std_error);
  }
}

TEST_CASE("reflected elastic sampler tracks the robin limit solution") {
  const Geometry geometry{0.0, 1.0, 0.05};
  const ModelSpec spec{ModelKind::Line, geometry, SkewParams{0.5, 1.0}};
  const double G = 1.0;
  const double h = 0.01;
  const EstimatorResult mc = simulate_reflected_elastic(
      spec, G, FunctionSpec::one(), 0.5, 20000, 31415, h);
  const double want = limit_solution(ModelKind::Line, geometry, Regime::robin(G), 0.5);
  // First-order boundary bias plus Monte Carlo noise.
  CHECK(std::abs(mc.mean - want) < 4.0 * mc.std_error + 0.2 * h);
}

TEST_CASE("sampling is reproducible and thread-shape independent") {
  const ChainSpec chain = build_chain(kLine, 0.02);
  const ExitStats a = simulate_exit(chain, 0.5, 4000, 7, 1);
  const ExitStats b = simulate_exit(chain, 0.5, 4000, 7, 3);
  CHECK(a.time.mean == b.time.mean);  // bitwise
  CHECK(a.time.std_error == b.time.std_error);
  CHECK(a.n_hit_upper == b.n_hit_upper);
  const ExitStats c = simulate_exit(chain, 0.5, 4000, 8, 1);
  CHECK(a.time.mean != c.time.mean);  // seed matters
}

TEST_CASE("chain functional with a linear source approaches the kernel solution") {
  // The discrete functional is O(h^2) from the continuum one.
  const double got_coarse = [] {
    const ChainSpec chain = build_chain(kLine, 0.02);
    PathFunctional functional;
    functional.f = FunctionSpec::linear();
    return chain_killed_functional_value(chain, functional)[chain.index_of(0.5)];
  }();
  const double want = green_solution(kLine, [](double y) { return y; }, 0.5, 1e-12);
  CHECK(std::abs(got_coarse - want) < 5e-4);
}
