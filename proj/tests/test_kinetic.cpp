#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hkr/kinetic.hpp"
#include "test_util.hpp"

using namespace hkr;
using hkr::test::uniform;

namespace {

State random_admissible(const Model& model) {
  if (model.m() == 1) return State{{uniform(-2, 2)}};
  if (model.m() == 2) return State{{uniform(0.1, 3), uniform(-2, 2)}};
  const auto& e = static_cast<const EulerModel&>(model);
  return e.from_primitive(uniform(0.1, 3), uniform(-2, 2), uniform(0.1, 3));
}

SteadyFrame steady_frame(const Model& model, const Mesh1D& mesh, const std::vector<State>& avgs) {
  SteadyFrame frame(model, mesh, QuadratureRule::midpoint());
  frame.fit(avgs);
  frame.extend(BoundaryKind::free_flow, 2, avgs);
  return frame;
}

}  // namespace

TEST_CASE("maxwellian values") {
  const BurgersModel b(0.0);
  CHECK(maxwellian(b, State{{1.0}}, 2.0, +1)[0] == doctest::Approx(0.625));
  CHECK(maxwellian(b, State{{1.0}}, 2.0, -1)[0] == doctest::Approx(0.375));
  CHECK_THROWS_AS(maxwellian(b, State{{1.0}}, 0.0, 1), ConfigError);
}

TEST_CASE("kinetic consistency for every model") {
  const BurgersModel b(0.3);
  const SweModel s(9.81, Geometry::flat());
  const EulerModel e(1.4, Geometry::flat());
  for (const Model* model : std::initializer_list<const Model*>{&b, &s, &e}) {
    const int m = model->m();
    for (int trial = 0; trial < 1000; ++trial) {
      const State u = random_admissible(*model);
      const double lam = uniform(0.5, 20.0);
      const State mp = maxwellian(*model, u, lam, +1), mm = maxwellian(*model, u, lam, -1);
      CHECK(hkr::test::max_diff(mp + mm, u, m) <= 1e-14 * (1.0 + std::abs(u[m - 1])));
      CHECK(hkr::test::max_diff(lam * (mp - mm), model->flux(u), m) <= 1e-13 * (1.0 + lam));
    }
  }
}

TEST_CASE("kinetic equilibrium and macroscopic reconstruction") {
  const SweModel s(9.81, Geometry::flat());
  std::vector<State> u(25);
  for (auto& x : u) x = random_admissible(s);
  const auto f = kinetic_equilibrium(s, u, 7.0);
  const auto back = f.macroscopic();
  CHECK(hkr::test::max_diff(back, u, 2) < 1e-14 * 4.0);
}

TEST_CASE("relaxation velocity choice") {
  const Mesh1D mesh(0.0, 1.0, 20);
  const SweModel s(9.81, Geometry::flat());
  const std::vector<State> rest(20, State{{1.0, 0.0}});
  CHECK(choose_lambda(steady_frame(s, mesh, rest), rest, 1.0) == doctest::Approx(std::sqrt(9.81)));
  CHECK(choose_lambda(steady_frame(s, mesh, rest), rest, 1.5) == doctest::Approx(1.5 * std::sqrt(9.81)));

  const BurgersModel b(0.15);
  std::vector<State> pulses(20);
  for (int i = 0; i < 20; ++i) pulses[i] = State{{1.2 * std::sin(0.3 * i)}};
  pulses[7] = State{{-1.2}};
  const double lam = choose_lambda(steady_frame(b, mesh, pulses), pulses, 1.0);
  CHECK(lam >= 1.2);
  CHECK(lam == doctest::Approx(1.2).epsilon(0.01));

  const std::vector<State> zero(20);
  CHECK(choose_lambda(steady_frame(b, mesh, zero), zero, 1.0, 1e-8) == 1e-8);
}

TEST_CASE("lambda rescale keeps the macroscopic state and kinetic flux") {
  const EulerModel e(1.4, Geometry::flat());
  KineticField f;
  for (int i = 0; i < 30; ++i) {
    const State u = random_admissible(e);
    f.plus.push_back(maxwellian(e, u, 4.0, +1) + hkr::test::random_state(3, -0.1, 0.1));
    f.minus.push_back(maxwellian(e, u, 4.0, -1) + hkr::test::random_state(3, -0.1, 0.1));
  }
  const KineticField before = f;
  rescale_lambda(f, e, 4.0, 6.5);
  for (int i = 0; i < 30; ++i) {
    CHECK(hkr::test::max_diff(f.u(i), before.u(i), 3) < 1e-13);
    CHECK(hkr::test::max_diff(6.5 * (f.plus[i] - f.minus[i]), 4.0 * (before.plus[i] - before.minus[i]), 3) < 1e-12);
  }
}

TEST_CASE("relaxation parameter laws") {
  CHECK(omega(0.05, RelaxConfig{RelaxLaw::omega_linear, 1.0, 0.25}) == doctest::Approx(1.95));
  CHECK(omega(0.1, RelaxConfig{RelaxLaw::omega_from_tau, 1.0, 0.25}) == doctest::Approx(0.2 / 0.105));
  CHECK(omega(0.1, RelaxConfig{RelaxLaw::omega_from_tau, 1.0, 1e-12}) == doctest::Approx(2.0));
  CHECK(omega(0.0, RelaxConfig{}) == 2.0);
}

TEST_CASE("source step") {
  const BurgersModel b(0.5);
  const double dt = 0.1;
  // u = 1 + dt/2 * 0.5 (1 + u^2): smaller root of 0.025 u^2 - u + 1.025 = 0.
  const double oracle = (1.0 - std::sqrt(1.0 - 4.0 * 0.025 * 1.025)) / (2.0 * 0.025);
  CHECK(oracle == doctest::Approx(1.05270).epsilon(1e-5));
  CHECK(source_step(b, State{{1.0}}, State{{0.0}}, 0.0, dt)[0] == doctest::Approx(oracle).epsilon(1e-13));
  CHECK(source_step(b, State{{0.7}}, State{{0.7}}, 0.3, dt)[0] == 0.7);

  const SweModel s(9.81, Geometry{[](double x) { return 0.1 * x * x; }, [](double x) { return 0.2 * x; }});
  for (int trial = 0; trial < 100; ++trial) {
    const State us = random_admissible(s), ue = random_admissible(s);
    const double x = uniform(-1, 1);
    const State r = source_step(s, us, ue, x, uniform(0.001, 0.5));
    CHECK(r[0] == us[0]);
    CHECK(hkr::test::max_diff(source_step(s, ue, ue, x, 0.3), ue, 2) < 1e-14);
  }
}

TEST_CASE("projection step") {
  const SweModel s(9.81, Geometry::flat());
  const double lam = 5.0;
  const State ue{{1.2, 0.4}};
  State fp = maxwellian(s, ue, lam, +1), fm = maxwellian(s, ue, lam, -1);
  projection_step(s, fp, fm, ue, ue, 1.97, lam);
  CHECK(hkr::test::max_diff(fp, maxwellian(s, ue, lam, +1), 2) < 1e-15);
  CHECK(hkr::test::max_diff(fm, maxwellian(s, ue, lam, -1), 2) < 1e-15);

  for (int trial = 0; trial < 200; ++trial) {
    const State us = random_admissible(s), un = random_admissible(s);
    const State fp0 = hkr::test::random_state(2, -1, 1), fm0 = us - fp0;
    const double w = uniform(1.0, 2.0);
    State p = fp0, m = fm0;
    projection_step(s, p, m, us, un, w, lam);
    const State expect = (1.0 - w) * us + w * 0.5 * (us + un);
    CHECK(hkr::test::max_diff(p + m, expect, 2) < 1e-13);

    p = fp0;
    m = fm0;
    projection_step(s, p, m, us, us, 2.0, lam);
    CHECK(hkr::test::max_diff(p, 2.0 * maxwellian(s, us, lam, +1) - fp0, 2) < 1e-13);
    CHECK(hkr::test::max_diff(p + m, us, 2) < 1e-14 * 4.0);
  }
}

TEST_CASE("relaxation step leaves steady equilibria fixed") {
  const Mesh1D mesh(-1.0, 1.0, 30);
  const EulerModel e(1.4, Geometry{[](double x) { return x; }, [](double) { return 1.0; }});
  std::vector<State> u(30);
  for (int i = 0; i < 30; ++i) u[i] = cell_average([](double x) {
      const double rho = std::exp(-x);
      return State{{rho, 0.0, (rho + 0.5) / 0.4}};
    }, mesh, i, QuadratureRule::midpoint());
  const auto frame = steady_frame(e, mesh, u);
  const double lam = 3.0;
  auto f = kinetic_equilibrium(e, u, lam);
  const auto f0 = f;
  relaxation_step(f, frame, lam, 0.01, RelaxConfig{});
  CHECK(hkr::test::max_diff(f.plus, f0.plus, 3) < 1e-13);
  CHECK(hkr::test::max_diff(f.minus, f0.minus, 3) < 1e-13);
}
