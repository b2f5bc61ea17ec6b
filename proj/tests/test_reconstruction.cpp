#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hkr/reconstruction.hpp"
#include "hkr/transport.hpp"
#include "test_util.hpp"

using namespace hkr;
using hkr::test::uniform;

namespace {

std::array<State, 3> stencil1(double a, double b, double c) { return {State{{a}}, State{{b}}, State{{c}}}; }

// Exact cell average of c0 + c1 xi + c2 xi^2 over xi in [-1/2, 1/2].
State poly_average(const LocalPoly& p) { return p.c0 + p.c2 * (1.0 / 12.0); }

// Max error of the base reconstruction of sin(x) at 11 points per cell, periodic on [0, 2 pi].
double sin_recon_error(BaseRecon base, int nx) {
  const double L = 2.0 * std::acos(-1.0);
  const Mesh1D mesh(0.0, L, nx);
  const double dx = mesh.dx();
  auto avg = [&](int i) { return (std::cos(mesh.left(i)) - std::cos(mesh.right(i))) / dx; };
  double err = 0.0;
  for (int i = 0; i < nx; ++i) {
    const State vm{{avg((i - 1 + nx) % nx)}}, v0{{avg(i)}}, vp{{avg((i + 1) % nx)}};
    const LocalPoly p = base_reconstruct(base, vm, v0, vp, 1, dx);
    for (int k = 0; k <= 10; ++k) {
      const double xi = -0.5 + k / 10.0;
      err = std::max(err, std::abs(p(xi)[0] - std::sin(mesh.center(i) + xi * dx)));
    }
  }
  return err;
}

Geometry bumpy() {
  return {[](double x) { return 0.3 * std::exp(-x * x) - 0.1 * std::cos(3.0 * x); },
          [](double x) { return -0.6 * x * std::exp(-x * x) + 0.3 * std::sin(3.0 * x); }};
}

}  // namespace

TEST_CASE("constant reconstruction") {
  for (double xi : {-0.5, 0.0, 0.3}) CHECK(recon_constant(stencil1(7, 3, -1), xi)[0] == 3.0);
}

TEST_CASE("MUSCL reconstruction") {
  CHECK(recon_muscl(stencil1(0, 1, 2), -0.5, 1)[0] == doctest::Approx(0.5));
  CHECK(recon_muscl(stencil1(0, 1, 2), 0.5, 1)[0] == doctest::Approx(1.5));
  CHECK(recon_muscl(stencil1(0, 1, 0), 0.5, 1)[0] == 1.0);
  CHECK(recon_muscl(stencil1(0, 1, 0), -0.5, 1)[0] == 1.0);
  for (auto lim : {SlopeLimiter::minmod, SlopeLimiter::van_leer}) {
    // Averages of u(x) = x on unit cells centered at -1, 0, 1.
    CHECK(recon_muscl(stencil1(-1, 0, 1), 0.37, 1, lim)[0] == doctest::Approx(0.37));
    CHECK(recon_muscl(stencil1(0, 1, 2), 0.5, 1, lim)[0] == doctest::Approx(1.5));
  }
  CHECK(minmod(1.0, 3.0) == 1.0);
  CHECK(minmod(-1.0, 3.0) == 0.0);
  CHECK(van_leer(1.0, 3.0) == doctest::Approx(1.5));
  CHECK(van_leer(-1.0, 3.0) == 0.0);
  CHECK(recon_muscl(stencil1(0, 1, 3), 0.5, 1, SlopeLimiter::van_leer)[0] == doctest::Approx(1.0 + 0.5 * 4.0 / 3.0));
}

TEST_CASE("CWENOZ3 reconstruction") {
  // Averages of x^2 on unit cells centered at -1, 0, 1.
  CHECK(recon_cwenoz3(stencil1(13.0 / 12, 1.0 / 12, 13.0 / 12), 0.5, 1, 1.0)[0] == doctest::Approx(0.25).epsilon(1e-14));
  const auto w = cwenoz3_weights(2.0, 2.0, 2.0, 0.1);
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(0.25));
  CHECK(w[2] == doctest::Approx(0.25));
  for (double xi : {-0.5, -0.1, 0.5}) CHECK(recon_cwenoz3(stencil1(2, 2, 2), xi, 1, 0.1)[0] == doctest::Approx(2.0));
}

TEST_CASE("CWENOZ3 stays within the stencil range at interfaces for jumps") {
  // With epsilon = dx^2 the Z-weights leave an overshoot of about 1.2 dx^2 at a unit jump.
  for (double dx : {0.1, 0.01, 0.001}) {
    const double tol = 1.5 * dx * dx;
    for (const auto& s : {stencil1(0, 0, 1), stencil1(0, 1, 1), stencil1(1, 0, 0), stencil1(1, 1, 0)}) {
      for (double xi : {-0.5, 0.5}) {
        const double v = recon_cwenoz3(s, xi, 1, dx)[0];
        CHECK(v >= -tol);
        CHECK(v <= 1.0 + tol);
      }
    }
  }
}

TEST_CASE("base reconstructions conserve the cell average") {
  for (int trial = 0; trial < 500; ++trial) {
    const State vm = hkr::test::random_state(3, -3, 3), v0 = hkr::test::random_state(3, -3, 3),
                vp = hkr::test::random_state(3, -3, 3);
    for (auto base : {BaseRecon::constant, BaseRecon::muscl, BaseRecon::cwenoz3}) {
      const auto p = base_reconstruct(base, vm, v0, vp, 3, uniform(0.01, 1.0));
      CHECK(hkr::test::max_diff(poly_average(p), v0, 3) < 1e-13);
    }
  }
}

TEST_CASE("reconstruction accuracy orders on sin(x)") {
  const struct {
    BaseRecon base;
    double order;
  } cases[] = {{BaseRecon::constant, 1.0}, {BaseRecon::muscl, 2.0}, {BaseRecon::cwenoz3, 3.0}};
  for (const auto& c : cases) {
    const double observed = std::log2(sin_recon_error(c.base, 320) / sin_recon_error(c.base, 640));
    INFO(to_string(c.base), " observed ", observed);
    CHECK(std::abs(observed - c.order) <= 0.25);
  }
}

TEST_CASE("well-balanced wrapper reproduces steady profiles") {
  const Mesh1D mesh(-1.0, 1.0, 20);
  const BurgersModel burgers(1.0);
  const SweModel swe(9.81, bumpy());
  const EulerModel euler(1.4, Geometry{[](double x) { return 0.5 * x * x; }, [](double x) { return x; }});
  for (const auto& q : {QuadratureRule::midpoint(), QuadratureRule::gauss2()}) {
    for (int trial = 0; trial < 20; ++trial) {
      const double C = uniform(-1.0, 1.0);
      const double E0 = uniform(1.0, 2.0), q0 = uniform(0.1, 0.5);
      const double c1 = uniform(0.5, 2.0), c2 = uniform(0.0, 1.0);
      const std::vector<std::pair<const Model*, PointwiseFn>> cases{
          {&burgers, [&](double x) { return State{{C * std::exp(x)}}; }},
          {&swe, [&](double x) { return State{{E0 + swe.geometry().H(x), 0.0}}; }},
          {&swe,
           [&](double x) {
             return State{{swe_branch_height(q0, E0 + swe.geometry().H(x), 9.81, SweBranch::subcritical).value(), q0}};
           }},
          {&euler,
           [&](double x) {
             const double rho = c1 * std::exp(-euler.geometry().H(x));
             return State{{rho, 0.0, (rho + c2) / 0.4}};
           }},
      };
      for (const auto& [model, ue] : cases) {
        const int m = model->m();
        const auto avgs = project(ue, mesh, m, q);
        for (auto base : {BaseRecon::constant, BaseRecon::muscl, BaseRecon::cwenoz3}) {
          for (int i = 1; i + 1 < mesh.nx(); i += 3) {
            const auto r = wb_wrap(base, i, {avgs[i - 1], avgs[i], avgs[i + 1]}, *model, mesh, q);
            CHECK(r.profile.fitted());
            for (int k = 0; k < 20; ++k) {
              const double x = mesh.left(i) + uniform(0.0, 1.0) * mesh.dx();
              CHECK(hkr::test::max_diff(r.eval(*model, x), ue(x), m) < 1e-13);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("lake at rest keeps a flat free surface") {
  const Mesh1D mesh(-2.0, 2.0, 40);
  const SweModel swe(9.81, bumpy());
  const auto q = QuadratureRule::midpoint();
  const auto avgs = project([&](double x) { return State{{1.5 + swe.geometry().H(x), 0.0}}; }, mesh, 2, q);
  for (int i = 1; i + 1 < mesh.nx(); ++i) {
    const auto r = wb_wrap(BaseRecon::muscl, i, {avgs[i - 1], avgs[i], avgs[i + 1]}, swe, mesh, q);
    for (double x : {mesh.left(i), mesh.center(i), mesh.right(i)})
      CHECK(std::abs(r.eval(swe, x)[0] - swe.geometry().H(x) - 1.5) < 1e-13);
  }
}

TEST_CASE("wrapper without a steady fit falls back to the base reconstruction") {
  const Mesh1D mesh(0.0, 1.0, 10);
  const EulerModel euler(1.4, Geometry::flat(), EulerFitPolicy::at_rest_only);
  const std::array<State, 3> s{State{{1.0, 0.2, 3.0}}, State{{1.1, 0.3, 3.2}}, State{{1.3, 0.1, 3.1}}};
  const auto r = wb_wrap(BaseRecon::muscl, 4, s, euler, mesh, QuadratureRule::midpoint());
  CHECK_FALSE(r.profile.fitted());
  for (double xi : {-0.5, 0.0, 0.25, 0.5}) {
    const State base = recon_muscl(s, xi, 3);
    CHECK(hkr::test::max_diff(r.eval(euler, mesh.center(4) + xi * mesh.dx()), base, 3) < 1e-15);
  }
}

TEST_CASE("globally continuous evaluation") {
  const Mesh1D mesh(0.0, 1.0, 10);
  const auto q = QuadratureRule::midpoint();
  const int G = 2;

  // Zero Burgers data: every profile is the zero profile, so P_j is the fluctuation alone.
  const BurgersModel burgers(0.5);
  std::vector<State> zero(10);
  SteadyFrame flat(burgers, mesh, q);
  flat.fit(zero);
  flat.extend(BoundaryKind::free_flow, G, zero);
  std::vector<State> fluct(10 + 2 * G, State{{2.5}});
  for (double x : {0.0, 0.31, 0.55, 0.95}) CHECK(continuous_eval(flat, fluct, x)[0] == doctest::Approx(2.5));
  for (int j = 0; j < 10 + 2 * G; ++j) fluct[j] = State{{static_cast<double>(j)}};
  CHECK(continuous_eval(flat, fluct, mesh.center(4))[0] == 4.0 + G);
  CHECK(continuous_eval(flat, fluct, mesh.center(4) + 0.25 * mesh.dx())[0] == doctest::Approx(4.25 + G));
  CHECK_THROWS_AS(continuous_eval(flat, fluct, 2.0), BoundaryError);

  // Steady data with zero fluctuation returns the steady solution anywhere.
  auto ue = [](double x) { return State{{0.2 * std::exp(0.5 * x)}}; };
  const auto avgs = project(ue, mesh, 1, q).values();
  SteadyFrame frame(burgers, mesh, q);
  frame.fit(avgs);
  frame.extend(BoundaryKind::free_flow, G, avgs);
  std::vector<State> none(10 + 2 * G);
  for (int k = 0; k < 50; ++k) {
    const double x = uniform(-0.1, 1.1);
    CHECK(std::abs(continuous_eval(frame, none, x)[0] - ue(x)[0]) < 1e-14);
  }
}

TEST_CASE("implicit reconstruction update") {
  const State trace{{1.0, -2.0}};
  const State f{{0.3, 0.4}};
  CHECK(implicit_recon_update(trace, f, f) == trace);
  const State shifted = implicit_recon_update(trace, f + State{{0.5, 0.5}}, f);
  CHECK(shifted[0] == doctest::Approx(1.5));
  CHECK(shifted[1] == doctest::Approx(-1.5));
}
