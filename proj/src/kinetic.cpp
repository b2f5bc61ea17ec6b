#include "hkr/kinetic.hpp"

#include <algorithm>
#include <cmath>

namespace hkr {

std::vector<State> KineticField::macroscopic() const {
  std::vector<State> u(plus.size());
  for (std::size_t i = 0; i < plus.size(); ++i) u[i] = plus[i] + minus[i];
  return u;
}

State maxwellian(const Model& model, const State& u, double lambda, int sigma) {
  if (!(lambda > 0.0)) throw ConfigError("maxwellian: lambda must be positive");
  return maxwellian_from_flux(u, model.flux(u), lambda, sigma);
}

KineticField kinetic_equilibrium(const Model& model, std::span<const State> u, double lambda) {
  KineticField f;
  f.plus.resize(u.size());
  f.minus.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    model.require_admissible(u[i], static_cast<int>(i));
    const State F = model.flux(u[i]);
    f.plus[i] = maxwellian_from_flux(u[i], F, lambda, 1);
    f.minus[i] = maxwellian_from_flux(u[i], F, lambda, -1);
  }
  return f;
}

double choose_lambda(const SteadyFrame& frame, std::span<const State> u, double safety, double lambda_min) {
  return std::max(safety * frame.max_speed(u), lambda_min);
}

void rescale_lambda(KineticField& f, const Model& model, double lambda_old, double lambda_new) {
  if (lambda_old == lambda_new) return;
  const double r = lambda_old / lambda_new;
  for (int i = 0; i < f.nx(); ++i) {
    const State u = f.u(i);
    const State F = model.flux(u);
    for (int s : {1, -1}) {
      State& fs = f.family(s)[i];
      fs = maxwellian_from_flux(u, F, lambda_new, s) + r * (fs - maxwellian_from_flux(u, F, lambda_old, s));
    }
  }
}

double omega(double dt, const RelaxConfig& cfg) {
  const double h = std::abs(dt);
  if (cfg.law == RelaxLaw::omega_from_tau) {
    if (h == 0.0) return 2.0;
    const double tau = cfg.c_tau * h * h;
    return 2.0 * h / (2.0 * tau + h);
  }
  return std::clamp(2.0 - cfg.C * h, 1e-12, 2.0);
}

namespace {

// Solve A x = b for m <= 3 by Gaussian elimination with partial pivoting.
bool solve_small(Jacobian A, State b, int m, State& x) {
  for (int c = 0; c < m; ++c) {
    int piv = c;
    for (int r = c + 1; r < m; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    if (A[piv][c] == 0.0) return false;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < m; ++r) {
      const double f = A[r][c] / A[c][c];
      for (int k = c; k < m; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  for (int r = m - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < m; ++k) s -= A[r][k] * x[k];
    x[r] = s / A[r][r];
  }
  return true;
}

}  // namespace

State source_step(const Model& model, const State& u_star, const State& ue, double x, double dt, int cell) {
  const int m = model.m();
  const State fixed = model.source(u_star, x) - 2.0 * model.source(ue, x);
  State u = u_star;
  for (int it = 0; it < 50; ++it) {
    const State G = u - u_star - (0.5 * dt) * (fixed + model.source(u, x));
    Jacobian J = model.source_jacobian(u, x);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) J[r][c] *= -0.5 * dt;
      J[r][r] += 1.0;
    }
    State delta;
    if (!solve_small(J, -1.0 * G, m, delta))
      throw NumericalError("source step: singular Newton matrix in cell " + std::to_string(cell), cell);
    u += delta;
    bool done = true;
    for (int k = 0; k < m; ++k) {
      if (!std::isfinite(u[k])) done = false;
      if (!(std::abs(delta[k]) <= 1e-12 * (1.0 + std::abs(u[k])))) done = false;
    }
    if (done) return u;
  }
  throw NumericalError("source step: Newton did not converge in cell " + std::to_string(cell), cell);
}

void projection_step(const Model& model, State& fplus, State& fminus, const State& u_star, const State& u_new,
                     double w, double lambda) {
  const State F0 = model.flux(u_star), F1 = model.flux(u_new);
  for (int s : {1, -1}) {
    State& f = s > 0 ? fplus : fminus;
    const State meq = 0.5 * (maxwellian_from_flux(u_star, F0, lambda, s) + maxwellian_from_flux(u_new, F1, lambda, s));
    f = (1.0 - w) * f + w * meq;
  }
}

void relaxation_step(KineticField& f, const SteadyFrame& frame, double lambda, double dt, const RelaxConfig& cfg) {
  const Model& model = frame.model();
  const Mesh1D& mesh = frame.mesh();
  const double w = omega(dt, cfg);
  for (int i = 0; i < f.nx(); ++i) {
    const State u_star = f.u(i);
    model.require_admissible(u_star, i);
    const State u_new = source_step(model, u_star, frame.avg(i, 0), mesh.center(i), dt, i);
    model.require_admissible(u_new, i);
    projection_step(model, f.plus[i], f.minus[i], u_star, u_new, w, lambda);
  }
}

}  // namespace hkr
