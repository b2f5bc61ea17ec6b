#include "hkr/reference.hpp"

#include <algorithm>
#include <cmath>

namespace hkr {

State llf_flux(const Model& model, const State& ul, const State& ur) {
  const double a = std::max(model.max_wave_speed(ul), model.max_wave_speed(ur));
  return 0.5 * (model.flux(ul) + model.flux(ur)) - (0.5 * a) * (ur - ul);
}

namespace {

double llf_update(const Model& model, const Mesh1D& mesh, SteadyFrame& frame, std::vector<State>& u, double cfl,
                  BoundaryKind bc, double dt_max, const std::map<int, SteadyProfile>* pinned) {
  const int nx = mesh.nx();
  for (int i = 0; i < nx; ++i) model.require_admissible(u[i], i);
  frame.fit(u, pinned);
  frame.extend(bc, 1, u);
  const auto padded = frame.pad(u);

  // Piecewise-constant WB traces at x_{i+1/2} from cells i (left) and i+1 (right), i in [-1, nx).
  std::vector<State> flux(nx + 1);
  double smax = 0.0;
  for (int i = -1; i < nx; ++i) {
    const State ul = frame.face(i, 1) + (padded[i + 1] - frame.avg(i, 0));
    const State ur = frame.face(i + 1, 0) + (padded[i + 2] - frame.avg(i + 1, 0));
    model.require_admissible(ul, std::max(i, 0));
    model.require_admissible(ur, std::min(i + 1, nx - 1));
    smax = std::max({smax, model.max_wave_speed(ul), model.max_wave_speed(ur)});
    flux[i + 1] = llf_flux(model, ul, ur);
  }
  const double dx = mesh.dx();
  double dt = std::min(cfl * dx / std::max(smax, 1e-12), dt_max);
  std::vector<State> next(nx);
  for (int i = 0; i < nx; ++i) {
    const double x = mesh.center(i);
    const State src = model.source(u[i], x) - model.source(frame.center_value(i), x);
    const State bal = flux[i + 1] - flux[i] - (frame.face_flux(i, 1) - frame.face_flux(i, 0));
    next[i] = u[i] - (dt / dx) * bal + dt * src;
  }
  u = std::move(next);
  return dt;
}

}  // namespace

double llf_wb_step(const Model& model, const Mesh1D& mesh, std::vector<State>& u, double cfl, BoundaryKind bc,
                   double dt_max) {
  SteadyFrame frame(model, mesh, QuadratureRule::midpoint());
  return llf_update(model, mesh, frame, u, cfl, bc, dt_max, nullptr);
}

LlfSolver::LlfSolver(std::shared_ptr<const Model> model, const Mesh1D& mesh, double cfl, BoundaryKind bc,
                     std::vector<State> u0, std::map<int, SteadyProfile> pinned)
    : model_(std::move(model)),
      mesh_(mesh),
      cfl_(cfl),
      bc_(bc),
      pinned_(std::move(pinned)),
      frame_(*model_, mesh_, QuadratureRule::midpoint()),
      u_(std::move(u0)) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("llf: cfl must lie in (0, 1]");
  if (static_cast<int>(u_.size()) != mesh_.nx()) throw ConfigError("llf: initial data size differs from nx");
}

double LlfSolver::step(double dt_max) {
  const double dt = llf_update(*model_, mesh_, frame_, u_, cfl_, bc_, dt_max, &pinned_);
  for (int i = 0; i < mesh_.nx(); ++i)
    if (!all_finite(u_[i], model_->m())) throw NumericalError("llf: non-finite value in cell " + std::to_string(i), i);
  t_ += dt;
  return dt;
}

void LlfSolver::advance_to(double t_end) {
  const double tol = 1e-12 * std::max(1.0, std::abs(t_end));
  while (t_end - t_ > tol) step(t_end - t_);
}

std::vector<State> restrict_average(std::span<const State> fine, int nx_coarse) {
  const int nf = static_cast<int>(fine.size());
  if (nx_coarse <= 0 || nf % nx_coarse != 0)
    throw ConfigError("restrict_average: fine size " + std::to_string(nf) + " is not a multiple of " +
                      std::to_string(nx_coarse));
  const int r = nf / nx_coarse;
  std::vector<State> out(nx_coarse);
  for (int i = 0; i < nx_coarse; ++i) {
    State s;
    for (int k = 0; k < r; ++k) s += fine[i * r + k];
    out[i] = s / r;
  }
  return out;
}

}  // namespace hkr
