#include <doctest.h>

#include <cmath>

#include "skewlab/closed_form.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/function_catalog.hpp"
#include "skewlab/scale_speed.hpp"

using namespace skewlab;

namespace {

// Reference values frozen from an independent high-precision evaluation of
// the scale/speed representation (40-digit quadrature of the Dirichlet
// kernel), printed to 17 significant digits.
const ModelSpec kL1{ModelKind::Line, Geometry{0.0, 1.0, 0.25}, SkewParams{0.3, 2.0}};
const ModelSpec kL2{ModelKind::Line, Geometry{0.2, 0.9, 0.35}, SkewParams{0.7, 0.4}};
const ModelSpec kB1{ModelKind::Bessel2, Geometry{0.5, 1.0, 0.25}, SkewParams{0.6, 0.5}};
const ModelSpec kB2{ModelKind::Bessel2, Geometry{0.3, 0.8, 0.4}, SkewParams{0.25, 3.0}};

void check_rel(double got, double want, double tol = 1e-12) {
  CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}

}  // namespace

TEST_CASE("hit probabilities match the independent reference") {
  check_rel(exit_prob(kL1, 0.25), 0.15789473684210526);
  check_rel(exit_prob(kL1, 0.5), 0.31578947368421052);
  check_rel(exit_prob(kL1, 0.75), 0.47368421052631578);
  check_rel(exit_prob(kL1, 1.1), 0.77894736842105262);
  check_rel(exit_prob(kL2, 0.5), 0.35294117647058821);
  check_rel(exit_prob(kL2, 1.0), 0.87394957983193275);
  check_rel(exit_prob(kB1, 0.6), 0.21655717909936684);
  check_rel(exit_prob(kB1, 0.75), 0.48160174572420804);
  check_rel(exit_prob(kB1, 0.9), 0.69815892482357488);
  check_rel(exit_prob(kB1, 1.1), 0.89877505503375577);
  check_rel(exit_prob(kB2, 0.5), 0.23248676035896359);
  check_rel(exit_prob(kB2, 1.0), 0.75106565071970453);
}

TEST_CASE("hit probability endpoints and monotonicity") {
  for (const ModelSpec& spec : {kL1, kL2, kB1, kB2}) {
    const Geometry& g = spec.geometry;
    CHECK(exit_prob(spec, g.l) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(exit_prob(spec, g.r()) == doctest::Approx(1.0).epsilon(1e-14));
    double prev = 0.0;
    for (int i = 1; i <= 40; ++i) {
      const double x = g.l + (g.r() - g.l) * i / 40.0;
      const double phi = exit_prob(spec, x);
      CHECK(phi >= prev);
      prev = phi;
    }
    CHECK_THROWS_AS(exit_prob(spec, g.r() + 0.1), OutOfDomain);
  }
}

TEST_CASE("mean exit times match the independent reference") {
  check_rel(mean_exit(kL1, 0.25), 0.28453947368421053);
  check_rel(mean_exit(kL1, 0.5), 0.44407894736842106);
  check_rel(mean_exit(kL1, 0.75), 0.47861842105263159);
  check_rel(mean_exit(kL1, 1.1), 0.24039473684210527);
  check_rel(mean_exit(kL2, 0.5), 0.26514705882352939);
  check_rel(mean_exit(kL2, 1.0), 0.30441176470588232);
  check_rel(mean_exit(kB1, 0.6), 0.083591238063229644);
  check_rel(mean_exit(kB1, 0.75), 0.15196320480308129);
  check_rel(mean_exit(kB1, 0.9), 0.16680444286631093);
  check_rel(mean_exit(kB1, 1.1), 0.11727404368277042);
  check_rel(mean_exit(kB2, 0.5), 0.17581148696125685);
  check_rel(mean_exit(kB2, 1.0), 0.11058624185390029);
  for (const ModelSpec& spec : {kL1, kB1}) {
    CHECK(mean_exit(spec, spec.geometry.l) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(mean_exit(spec, spec.geometry.r()) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("kind dispatch rejects the wrong closed form") {
  CHECK_THROWS_AS(mean_exit_bessel(kL1, 0.5), WrongKind);
  CHECK_THROWS_AS(mean_exit_line(kB1, 0.75), WrongKind);
  CHECK(mean_exit(kL1, 0.5) == mean_exit_line(kL1, 0.5));
  CHECK(mean_exit(kB1, 0.75) == mean_exit_bessel(kB1, 0.75));
}

TEST_CASE("no-interface reductions collapse to the classical formulas") {
  // alpha = 1/2, lambda = 1 is a plain diffusion: the interface vanishes.
  const ModelSpec line{ModelKind::Line, Geometry{0.0, 1.0, 0.5}, SkewParams{0.5, 1.0}};
  CHECK(mean_exit(line, 0.75) == doctest::Approx(0.5625).epsilon(1e-13));
  const double r = line.geometry.r();
  for (double x : {0.1, 0.5, 0.9, 1.2}) {
    check_rel(exit_prob(line, x), x / r, 1e-13);
    check_rel(mean_exit(line, x), x * (r - x), 1e-13);
  }
  const ModelSpec radial{ModelKind::Bessel2, Geometry{0.5, 1.0, 0.5}, SkewParams{0.5, 1.0}};
  const double l = radial.geometry.l;
  const double rr = radial.geometry.r();
  const double A = (rr * rr - l * l) / (2.0 * std::log(rr / l));
  for (double x : {0.6, 0.9, 1.2}) {
    check_rel(exit_prob(radial, x), std::log(x / l) / std::log(rr / l), 1e-13);
    check_rel(mean_exit(radial, x), A * std::log(x / l) - (x * x - l * l) / 2.0, 1e-13);
  }
}

TEST_CASE("cached constants are mutually consistent") {
  ExitQuantities line(kL1);
  CHECK_THROWS_AS(line.pi1(), WrongKind);
  CHECK(line.i2() > 0.0);
  ExitQuantities radial(kB1);
  CHECK_THROWS_AS(radial.i1(), WrongKind);
  // pi3 is the scale span; pi_star combines the others.
  ScaleSpeed ss(kB1);
  check_rel(radial.pi3(), ss.scale_function(kB1.geometry.r()) -
                              ss.scale_function(kB1.geometry.l));
  check_rel(radial.pi_star(),
            radial.pi1() + radial.pi2() - radial.pi4() -
                ss.scale_function(kB1.geometry.l) * ss.speed_measure(kB1.geometry.l));
}

TEST_CASE("kernel solution with unit source reproduces the mean exit time") {
  FunctionSpec one = FunctionSpec::one();
  auto f = [&](double y) { return one(y); };
  for (const ModelSpec& spec : {kL1, kL2, kB1, kB2}) {
    const Geometry& g = spec.geometry;
    for (double t : {0.2, 0.55, 0.8}) {
      const double x = g.l + (g.r() - g.l) * t;
      const double direct = mean_exit(spec, x);
      const double kernel = green_solution(spec, f, x, 1e-11);
      CHECK(std::abs(direct - kernel) < 1e-9);
    }
  }
}

TEST_CASE("kernel solution matches the reference for non-constant sources") {
  check_rel(green_solution(kL1, [](double y) { return y; }, 0.5, 1e-12),
            0.25849780701754386, 1e-9);
  FunctionSpec ind = FunctionSpec::indicator_left(kL1.geometry.ell);
  check_rel(green_solution(kL1, [&](double y) { return ind(y); }, 0.5, 1e-12),
            0.43421052631578948, 1e-9);
  check_rel(green_solution(kB1, [](double y) { return y; }, 0.75, 1e-12),
            0.13615879107896941, 1e-9);
}

TEST_CASE("subinterval quantities: straddling, one-sided, and endpoint cases") {
  // Straddling the interface: two-branch formulas with (a, b) endpoints.
  check_rel(mean_exit_interval(kL1, 0.5, 1.1, 0.75), 0.10397727272727273);
  check_rel(exit_prob_interval(kL1, 0.5, 1.1, 0.75), 0.3409090909090909);
  check_rel(mean_exit_interval(kB1, 0.75, 1.2, 0.9), 0.061433963562094973);
  // One-sided cells use the local constant variance.
  check_rel(mean_exit_interval(kL1, 0.25, 0.75, 0.5), 0.0625);
  check_rel(mean_exit_interval(kL1, 1.05, 1.15, 1.1), 0.00125);
  check_rel(mean_exit_interval(kB1, 0.6, 0.9, 0.75), 0.022576435472971907);
  check_rel(mean_exit_interval(kB1, 1.05, 1.2, 1.1), 0.010079132278839055);
  // Degenerate starts.
  CHECK(mean_exit_interval(kL1, 0.5, 1.1, 0.5) == doctest::Approx(0.0));
  CHECK(exit_prob_interval(kL1, 0.5, 1.1, 1.1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(mean_exit_interval(kL1, 0.5, 1.1, 1.2), OutOfDomain);
  CHECK_THROWS_AS(mean_exit_interval(kL1, 1.1, 0.5, 0.75), OutOfDomain);
  // Full-interval reduction agrees with the direct closed form.
  check_rel(mean_exit_interval(kL1, 0.0, 1.25, 0.5), mean_exit(kL1, 0.5), 1e-13);
  check_rel(exit_prob_interval(kB1, 0.5, 1.25, 0.9), exit_prob(kB1, 0.9), 1e-13);
}

TEST_CASE("reflected holding times of the unit-variance limit process") {
  CHECK(reflected_hold_line(0.4, 0.9) == doctest::Approx(0.25).epsilon(1e-14));
  check_rel(reflected_hold_bessel(0.4, 0.9), 0.3318534751352263, 1e-13);
  // Shrinks quadratically with the cell and stays positive.
  CHECK(reflected_hold_line(0.8, 0.9) == doctest::Approx(0.01).epsilon(1e-13));
  CHECK(reflected_hold_bessel(0.88, 0.9) > 0.0);
}

TEST_CASE("limit coefficients for every boundary regime") {
  const Geometry line_geom{0.0, 1.0, 0.1};
  CHECK(limit_coefficient(ModelKind::Line, line_geom, Regime::neumann()) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(limit_coefficient(ModelKind::Line, line_geom, Regime::dirichlet()) ==
        doctest::Approx(1.0).epsilon(1e-15));
  for (double G : {0.1, 1.0, 10.0}) {
    CHECK(limit_coefficient(ModelKind::Line, line_geom, Regime::robin(G)) ==
          doctest::Approx((2.0 + G) / (1.0 + G)).epsilon(1e-15));
  }
  const Geometry radial_geom{0.5, 1.0, 0.1};
  const double l = radial_geom.l, ell = radial_geom.ell;
  CHECK(limit_coefficient(ModelKind::Bessel2, radial_geom, Regime::neumann()) ==
        doctest::Approx(ell * ell).epsilon(1e-15));
  CHECK(limit_coefficient(ModelKind::Bessel2, radial_geom, Regime::dirichlet()) ==
        doctest::Approx((ell * ell - l * l) / (2.0 * std::log(ell / l))).epsilon(1e-15));
  const double G = 2.0;
  const double robin = (ell / G + (ell * ell - l * l) / 2.0) /
                       (1.0 / (ell * G) + std::log(ell / l));
  CHECK(limit_coefficient(ModelKind::Bessel2, radial_geom, Regime::robin(G)) ==
        doctest::Approx(robin).epsilon(1e-14));
}

TEST_CASE("robin coefficient interpolates between the extreme regimes") {
  const Geometry line_geom{0.0, 1.0, 0.1};
  const Geometry radial_geom{0.5, 1.0, 0.1};
  for (ModelKind kind : {ModelKind::Line, ModelKind::Bessel2}) {
    const Geometry& g = kind == ModelKind::Line ? line_geom : radial_geom;
    const double nearly_neumann = limit_coefficient(kind, g, Regime::robin(1e-12));
    const double nearly_dirichlet = limit_coefficient(kind, g, Regime::robin(1e12));
    check_rel(nearly_neumann, limit_coefficient(kind, g, Regime::neumann()), 1e-9);
    check_rel(nearly_dirichlet, limit_coefficient(kind, g, Regime::dirichlet()), 1e-9);
  }
}

TEST_CASE("line limit form is stated for the unit geometry only") {
  CHECK_THROWS_AS(limit_coefficient(ModelKind::Line, Geometry{0.2, 1.0, 0.1},
                                    Regime::neumann()),
                  UnsupportedGeometry);
  CHECK_THROWS_AS(limit_coefficient(ModelKind::Line, Geometry{0.0, 2.0, 0.1},
                                    Regime::neumann()),
                  UnsupportedGeometry);
  CHECK_NOTHROW(limit_coefficient(ModelKind::Bessel2, Geometry{0.2, 1.7, 0.1},
                                  Regime::neumann()));
}

TEST_CASE("limit solution evaluates C x - x^2 and its radial analogue") {
  const Geometry line_geom{0.0, 1.0, 0.1};
  const Regime robin = Regime::robin(1.0);  // C = 1.5
  CHECK(limit_solution(ModelKind::Line, line_geom, robin, 0.5) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(limit_solution(ModelKind::Line, line_geom, robin, 0.0) ==
        doctest::Approx(0.0).epsilon(1e-14));
  const Geometry radial_geom{0.5, 1.0, 0.1};
  const double C = limit_coefficient(ModelKind::Bessel2, radial_geom, robin);
  const double x = 0.8;
  CHECK(limit_solution(ModelKind::Bessel2, radial_geom, robin, x) ==
        doctest::Approx(C * std::log(x / 0.5) - (x * x - 0.25) / 2.0).epsilon(1e-14));
}

TEST_CASE("boundary-condition residual vanishes only at the exact coefficient") {
  const Geometry line_geom{0.0, 1.0, 0.1};
  const Geometry radial_geom{0.5, 1.0, 0.1};
  for (ModelKind kind : {ModelKind::Line, ModelKind::Bessel2}) {
    const Geometry& g = kind == ModelKind::Line ? line_geom : radial_geom;
    for (const Regime& regime :
         {Regime::neumann(), Regime::robin(0.1), Regime::robin(1.0), Regime::robin(10.0),
          Regime::dirichlet()}) {
      const double C = limit_coefficient(kind, g, regime);
      CHECK(std::abs(bc_residual(kind, g, regime, C)) < 1e-12);
      CHECK(std::abs(bc_residual(kind, g, regime, C + 0.25)) > 1e-6);
    }
  }
}
