#include "hkr/splitting.hpp"

#include <algorithm>
#include <cmath>

namespace hkr {

SchemeTraits traits(SchemeLabel s) {
  switch (s) {
    case SchemeLabel::o1_exp:
      return {TransportKind::explicit_fv, BaseRecon::constant, Splitting::lie, false, 1.0, 1};
    case SchemeLabel::o2_exp:
      return {TransportKind::explicit_fv, BaseRecon::muscl, Splitting::strang, true, 1.0, 1};
    case SchemeLabel::o3_exp:
      return {TransportKind::explicit_fv, BaseRecon::cwenoz3, Splitting::suzuki, true, 1.0, 2};
    case SchemeLabel::o1_imp:
      return {TransportKind::implicit_fv, BaseRecon::constant, Splitting::lie, false, 1.0, 1};
    case SchemeLabel::o2_imp:
      return {TransportKind::implicit_fv, BaseRecon::muscl, Splitting::strang, false, 0.5, 1};
    case SchemeLabel::sl_o1:
      return {TransportKind::semi_lagrangian, BaseRecon::constant, Splitting::lie, false, 1.0, 1};
  }
  throw ConfigError("unknown scheme");
}

std::string_view label(SchemeLabel s) {
  switch (s) {
    case SchemeLabel::o1_exp: return "FV-HKR-O1-Exp";
    case SchemeLabel::o2_exp: return "FV-HKR-O2-Exp";
    case SchemeLabel::o3_exp: return "FV-HKR-O3-Exp";
    case SchemeLabel::o1_imp: return "FV-HKR-O1-Imp";
    case SchemeLabel::o2_imp: return "FV-HKR-O2-Imp";
    case SchemeLabel::sl_o1: return "SL-HKR-O1";
  }
  return "?";
}

std::optional<SchemeLabel> parse_scheme(std::string_view text) {
  for (SchemeLabel s : kAllSchemes)
    if (label(s) == text) return s;
  return std::nullopt;
}

std::string scheme_list() {
  std::string out;
  for (SchemeLabel s : kAllSchemes) {
    if (!out.empty()) out += ", ";
    out += label(s);
  }
  return out;
}

bool is_explicit(SchemeLabel s) { return traits(s).transport == TransportKind::explicit_fv; }

int nominal_order(SchemeLabel s) {
  switch (s) {
    case SchemeLabel::o2_exp:
    case SchemeLabel::o2_imp: return 2;
    case SchemeLabel::o3_exp: return 3;
    default: return 1;
  }
}

QuadratureRule quadrature_for(SchemeLabel s) {
  return traits(s).quadrature_points == 2 ? QuadratureRule::gauss2() : QuadratureRule::midpoint();
}

std::array<double, 5> suzuki_coefficients() {
  const double c = std::cbrt(4.0);
  const double g = 1.0 / (4.0 - c);
  return {g, g, -c * g, g, g};
}

void lie_step(const SubStep& T, const SubStep& R, double dt) {
  T(dt);
  R(dt);
}

void strang_step(const SubStep& T, const SubStep& R, double dt) {
  T(0.5 * dt);
  R(dt);
  T(0.5 * dt);
}

void suzuki_step(const SubStep& T, const SubStep& R, double dt) {
  for (double g : suzuki_coefficients()) {
    const double h = g * dt;
    T(0.25 * h);
    R(0.5 * h);
    T(0.5 * h);
    R(0.5 * h);
    T(0.25 * h);
  }
}

void compose(Splitting s, const SubStep& T, const SubStep& R, double dt) {
  switch (s) {
    case Splitting::lie: lie_step(T, R, dt); break;
    case Splitting::strang: strang_step(T, R, dt); break;
    case Splitting::suzuki: suzuki_step(T, R, dt); break;
  }
}

// ---------------------------------------------------------------- Solver

Solver::Solver(std::shared_ptr<const Model> model, const Mesh1D& mesh, SolverConfig cfg, std::vector<State> u0)
    : model_(std::move(model)),
      mesh_(mesh),
      cfg_(std::move(cfg)),
      traits_(traits(cfg_.scheme)),
      quad_(quadrature_for(cfg_.scheme)),
      frame_(*model_, mesh_, quad_) {
  if (!(cfg_.cfl > 0.0)) throw ConfigError("solver: cfl must be positive");
  if (is_explicit(cfg_.scheme) && cfg_.cfl > 1.0)
    throw ConfigError("solver: explicit scheme " + std::string(label(cfg_.scheme)) + " requires cfl <= 1");
  if (!(cfg_.lambda_safety >= 1.0)) throw ConfigError("solver: lambda safety factor must be >= 1");
  if (static_cast<int>(u0.size()) != mesh_.nx()) throw ConfigError("solver: initial data size differs from nx");
  if (cfg_.bc.sponge.enabled) {
    if (static_cast<int>(cfg_.sponge_background.size()) != mesh_.nx())
      throw ConfigError("solver: sponge layer needs a steady background on the mesh");
    if (cfg_.bc.sponge.width < 1 || cfg_.bc.sponge.strength < 0.0 || cfg_.bc.sponge.strength > 1.0)
      throw ConfigError("solver: sponge width must be >= 1 and strength in [0, 1]");
  }
  for (int i = 0; i < mesh_.nx(); ++i) model_->require_admissible(u0[i], i);
  frame_.fit(u0, &cfg_.pinned);
  lambda_ = choose_lambda(frame_, u0, cfg_.lambda_safety, cfg_.lambda_min);
  f_ = kinetic_equilibrium(*model_, u0, lambda_);
}

CellField Solver::field() const { return CellField(mesh_, model_->m(), solution()); }

void Solver::refit(const std::vector<State>& u) {
  for (int i = 0; i < mesh_.nx(); ++i) model_->require_admissible(u[i], i);
  frame_.fit(u, &cfg_.pinned);
  const double lam = choose_lambda(frame_, u, cfg_.lambda_safety, cfg_.lambda_min);
  if (lam != lambda_) {
    rescale_lambda(f_, *model_, lambda_, lam);
    lambda_ = lam;
  }
}

void Solver::transport(double dt) {
  const TransportSetup setup{&frame_, lambda_, traits_.base, cfg_.cweno, cfg_.limiter};
  switch (traits_.transport) {
    case TransportKind::explicit_fv: fv_explicit_step(f_, dt, setup, traits_.rk2); break;
    case TransportKind::implicit_fv: fv_implicit_step(f_, dt, setup, traits_.theta); break;
    case TransportKind::semi_lagrangian: sl_step(f_, dt, setup); break;
  }
}

double Solver::step(double dt_max) {
  const std::vector<State> u = f_.macroscopic();
  refit(u);
  const double dt = std::min(cfg_.cfl * mesh_.dx() / lambda_, dt_max);
  if (!(dt > 0.0)) throw NumericalError("solver: non-positive time step");
  const int ghosts = traits_.transport == TransportKind::semi_lagrangian ? sl_ghosts(lambda_, dt, mesh_.dx())
                                                                        : explicit_ghosts();
  frame_.extend(cfg_.bc.kind, ghosts, u);

  compose(
      traits_.splitting, [this](double h) { transport(h); },
      [this](double h) { relaxation_step(f_, frame_, lambda_, h, cfg_.relax); }, dt);

  if (cfg_.bc.sponge.enabled) {
    const int nx = mesh_.nx();
    for (int i = 0; i < nx; ++i) {
      const double s = sponge_factor(std::min(i, nx - 1 - i), cfg_.bc.sponge);
      if (s == 1.0) continue;
      const State& bg = cfg_.sponge_background[i];
      const State F = model_->flux(bg);
      for (int sigma : {1, -1}) {
        const State meq = maxwellian_from_flux(bg, F, lambda_, sigma);
        State& fs = f_.family(sigma)[i];
        fs = meq + s * (fs - meq);
      }
    }
  }

  for (int i = 0; i < mesh_.nx(); ++i) {
    if (!all_finite(f_.plus[i], model_->m()) || !all_finite(f_.minus[i], model_->m()))
      throw NumericalError("solver: non-finite value in cell " + std::to_string(i), i);
  }
  t_ += dt;
  ++steps_;
  return dt;
}

void Solver::advance_to(double t_end) {
  const double tol = 1e-12 * std::max(1.0, std::abs(t_end));
  while (t_end - t_ > tol) step(t_end - t_);
}

}  // namespace hkr
