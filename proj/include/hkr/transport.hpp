#pragma once

#include <span>
#include <vector>

#include "hkr/core.hpp"
#include "hkr/kinetic.hpp"
#include "hkr/reconstruction.hpp"

namespace hkr {

struct TransportSetup {
  const SteadyFrame* frame = nullptr;
  double lambda = 1.0;
  BaseRecon base = BaseRecon::constant;
  CwenoParams cweno;
  SlopeLimiter limiter = SlopeLimiter::van_leer;
};

// Ghost layers required by each backend for a step of size dt.
int explicit_ghosts();
int sl_ghosts(double lambda, double dt, double dx);

// Increments dt * L_sigma(u) of the explicit well-balanced upwind scheme for both families.
void explicit_increment(std::span<const State> u, double dt, const TransportSetup& s, std::vector<State>& dplus,
                        std::vector<State>& dminus);

// One explicit transport step; with rk2 the increment is wrapped in Heun's method.
void fv_explicit_step(KineticField& f, double dt, const TransportSetup& s, bool rk2);

enum class SweepClosure { free_flow, periodic, fixed };

// Solve (1 + a) d_i = r_i + a d_{up(i)} with up(i) = i - 1 (direction > 0) or i + 1 (direction < 0).
// `fixed` uses `ghost` as the upwind value outside the domain; free_flow copies the boundary value.
std::vector<State> upwind_sweep(std::span<const State> r, double a, int direction, SweepClosure closure,
                                const State& ghost = {});

// Interface trace shifted by the piecewise-constant temporal fluctuation f* - f.
inline State implicit_recon_update(const State& trace_n, const State& f_star, const State& f_n) {
  return trace_n + (f_star - f_n);
}

// Implicit theta-scheme on the kinetic variables: theta = 1 backward Euler, theta = 1/2 trapezoidal.
void fv_implicit_step(KineticField& f, double dt, const TransportSetup& s, double theta);

// Semi-Lagrangian step along the characteristics x -/+ lambda dt (constant base reconstruction).
void sl_step(KineticField& f, double dt, const TransportSetup& s);

}  // namespace hkr
