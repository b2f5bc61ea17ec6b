#pragma once

#include <span>
#include <string>
#include <vector>

#include "hkr/core.hpp"
#include "hkr/models.hpp"
#include "hkr/reconstruction.hpp"

namespace hkr {

struct KineticField {
  std::vector<State> plus, minus;

  int nx() const { return static_cast<int>(plus.size()); }
  State u(int i) const { return plus[i] + minus[i]; }
  std::vector<State> macroscopic() const;
  std::vector<State>& family(int sigma) { return sigma > 0 ? plus : minus; }
  const std::vector<State>& family(int sigma) const { return sigma > 0 ? plus : minus; }
};

enum class RelaxLaw { omega_linear, omega_from_tau };

struct RelaxConfig {
  RelaxLaw law = RelaxLaw::omega_linear;
  double C = 1.0;       // omega = 2 - C dt
  double c_tau = 0.25;  // tau = c_tau dt^2
};

// m_sigma(u) = u/2 + sigma F(u)/(2 lambda), sigma = +1 or -1.
State maxwellian(const Model& model, const State& u, double lambda, int sigma);
// Same with a precomputed flux value.
inline State maxwellian_from_flux(const State& u, const State& flux, double lambda, int sigma) {
  return 0.5 * u + (0.5 * sigma / lambda) * flux;
}

KineticField kinetic_equilibrium(const Model& model, std::span<const State> u, double lambda);

// Smallest admissible relaxation velocity for the fitted frame, scaled by `safety`, floored at lambda_min.
double choose_lambda(const SteadyFrame& frame, std::span<const State> u, double safety, double lambda_min = 1e-8);

// Re-express f in terms of a new lambda, keeping u and the kinetic flux lambda (f+ - f-) unchanged.
void rescale_lambda(KineticField& f, const Model& model, double lambda_old, double lambda_new);

double omega(double dt, const RelaxConfig& cfg);

// Crank-Nicolson solve of u = u* + dt/2 (S(u*) + S(u) - 2 S(ue)) at position x.
State source_step(const Model& model, const State& u_star, const State& ue, double x, double dt, int cell = -1);

// f <- (1 - omega) f + omega (m(u*) + m(u**))/2 for both families of one cell.
void projection_step(const Model& model, State& fplus, State& fminus, const State& u_star, const State& u_new,
                     double omega, double lambda);

// The relaxation-source operator R(dt) on every cell, using the frame's steady cell averages.
void relaxation_step(KineticField& f, const SteadyFrame& frame, double lambda, double dt, const RelaxConfig& cfg);

}  // namespace hkr
