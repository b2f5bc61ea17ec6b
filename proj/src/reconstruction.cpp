#include "hkr/reconstruction.hpp"

#include <algorithm>
#include <cmath>

namespace hkr {

std::string to_string(BaseRecon b) {
  switch (b) {
    case BaseRecon::constant: return "constant";
    case BaseRecon::muscl: return "muscl";
    case BaseRecon::cwenoz3: return "cwenoz3";
  }
  return "?";
}

std::string to_string(SlopeLimiter l) { return l == SlopeLimiter::minmod ? "minmod" : "van_leer"; }

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

double van_leer(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

double limit_slope(SlopeLimiter l, double a, double b) { return l == SlopeLimiter::minmod ? minmod(a, b) : van_leer(a, b); }

std::array<double, 3> cwenoz3_weights(double vm, double v0, double vp, double dx, const CwenoParams& cw) {
  const double D = vp - 2.0 * v0 + vm;
  const double b1 = v0 - vm, b2 = vp - v0;
  const double b0 = (0.5 * (vp - vm) - cw.d1 * b1 - cw.d2 * b2) / cw.d0;
  const double c0 = 0.5 * D / cw.d0;
  const double beta0 = b0 * b0 + (13.0 / 3.0) * c0 * c0;
  const double beta1 = b1 * b1, beta2 = b2 * b2;
  const double tau = std::abs(beta2 - beta1);
  const double eps = cw.eps_factor * dx * dx;
  const double w0 = cw.d0 * (1.0 + tau / (beta0 + eps));
  const double w1 = cw.d1 * (1.0 + tau / (beta1 + eps));
  const double w2 = cw.d2 * (1.0 + tau / (beta2 + eps));
  const double s = w0 + w1 + w2;
  return {w0 / s, w1 / s, w2 / s};
}

LocalPoly base_reconstruct(BaseRecon kind, const State& vm, const State& v0, const State& vp, int m, double dx,
                           const CwenoParams& cw, SlopeLimiter limiter) {
  LocalPoly p;
  p.c0 = v0;
  if (kind == BaseRecon::constant) return p;
  for (int k = 0; k < m; ++k) {
    if (kind == BaseRecon::muscl) {
      p.c1[k] = limit_slope(limiter, v0[k] - vm[k], vp[k] - v0[k]);
      continue;
    }
    const double D = vp[k] - 2.0 * v0[k] + vm[k];
    // P0 = (P_opt - d1 P1 - d2 P2)/d0; the blend w0 P0 + w1 P1 + w2 P2 collapses to one parabola.
    const double a_opt = v0[k] - D / 24.0, b_opt = 0.5 * (vp[k] - vm[k]), c_opt = 0.5 * D;
    const double b1 = v0[k] - vm[k], b2 = vp[k] - v0[k];
    const double a0 = (a_opt - (cw.d1 + cw.d2) * v0[k]) / cw.d0;
    const double b0 = (b_opt - cw.d1 * b1 - cw.d2 * b2) / cw.d0;
    const double c0 = c_opt / cw.d0;
    const auto w = cwenoz3_weights(vm[k], v0[k], vp[k], dx, cw);
    p.c0[k] = w[0] * a0 + (w[1] + w[2]) * v0[k];
    p.c1[k] = w[0] * b0 + w[1] * b1 + w[2] * b2;
    p.c2[k] = w[0] * c0;
  }
  return p;
}

State recon_constant(const std::array<State, 3>& s, double) { return s[1]; }

State recon_muscl(const std::array<State, 3>& s, double xi, int m, SlopeLimiter limiter) {
  return base_reconstruct(BaseRecon::muscl, s[0], s[1], s[2], m, 1.0, {}, limiter)(xi);
}

State recon_cwenoz3(const std::array<State, 3>& s, double xi, int m, double dx, const CwenoParams& cw) {
  return base_reconstruct(BaseRecon::cwenoz3, s[0], s[1], s[2], m, dx, cw)(xi);
}

namespace {

// Quadrature averages of p over cells i-1, i, i+1 plus its traces; nullopt if p is not evaluable there.
struct ProfileData {
  std::array<State, 3> avg{}, flux_avg{};
  std::array<State, 2> face{}, face_flux{};
  State center{}, center_flux{};
  double speed = 0.0;
};

std::optional<ProfileData> profile_data(const Model& model, const SteadyProfile& p, const Mesh1D& mesh,
                                        const QuadratureRule& q, int i) {
  ProfileData d;
  if (!p.fitted()) return d;
  for (int k = -1; k <= 1; ++k) {
    for (int m = 0; m < q.size(); ++m) {
      const auto u = model.steady_eval(p, q.node(mesh, i + k, m));
      if (!u || !model.admissible(*u)) return std::nullopt;
      d.avg[k + 1] += q.weights[m] * *u;
      d.flux_avg[k + 1] += q.weights[m] * model.flux(*u);
      if (k == 0) d.speed = std::max(d.speed, model.max_wave_speed(*u));
    }
  }
  const std::array<double, 3> xs{mesh.left(i), mesh.right(i), mesh.center(i)};
  std::array<State, 3> vals;
  for (int s = 0; s < 3; ++s) {
    const auto u = model.steady_eval(p, xs[s]);
    if (!u || !model.admissible(*u)) return std::nullopt;
    vals[s] = *u;
    d.speed = std::max(d.speed, model.max_wave_speed(*u));
  }
  d.face = {vals[0], vals[1]};
  d.face_flux = {model.flux(vals[0]), model.flux(vals[1])};
  d.center = vals[2];
  d.center_flux = model.flux(vals[2]);
  return d;
}

}  // namespace

State WBRecon::eval(const Model& model, double x) const {
  const auto pe = model.steady_eval(profile, x);
  if (!pe) throw NumericalError("wb reconstruction: steady profile not evaluable");
  return *pe + fluct((x - center) / dx);
}

WBRecon wb_wrap(BaseRecon base, int i, const std::array<State, 3>& stencil, const Model& model, const Mesh1D& mesh,
                const QuadratureRule& q, const CwenoParams& cw) {
  model.require_admissible(stencil[1], i);
  WBRecon r;
  r.center = mesh.center(i);
  r.dx = mesh.dx();
  std::optional<ProfileData> data;
  if (auto p = model.steady_fit(stencil[1], mesh, i, q)) {
    data = profile_data(model, *p, mesh, q, i);
    if (data) r.profile = *p;
  }
  if (!data) data = ProfileData{};
  std::array<State, 3> v;
  for (int k = 0; k < 3; ++k) v[k] = stencil[k] - data->avg[k];
  r.fluct = base_reconstruct(base, v[0], v[1], v[2], model.m(), mesh.dx(), cw);
  return r;
}

// ---------------------------------------------------------------- SteadyFrame

SteadyFrame::SteadyFrame(const Model& model, const Mesh1D& mesh, const QuadratureRule& q)
    : model_(&model), mesh_(mesh), q_(q) {}

void SteadyFrame::fill_cache(int i) {
  Cell& c = cell(i);
  auto d = profile_data(*model_, c.profile, mesh_, q_, i);
  if (!d) {
    c.profile = SteadyProfile{};
    d = ProfileData{};
  }
  c.avg = d->avg;
  c.flux_avg = d->flux_avg;
  c.face = d->face;
  c.face_flux = d->face_flux;
  c.center = d->center;
  c.center_flux = d->center_flux;
  c.speed = d->speed;
}

void SteadyFrame::fit(std::span<const State> avgs, const std::map<int, SteadyProfile>* pinned) {
  const int nx = mesh_.nx();
  if (static_cast<int>(avgs.size()) != nx) throw ConfigError("steady frame: average count differs from nx");
  ghosts_ = 0;
  cells_.assign(static_cast<std::size_t>(nx), Cell{});
  for (int i = 0; i < nx; ++i) {
    SteadyProfile p;
    if (pinned) {
      if (auto it = pinned->find(i); it != pinned->end()) p = it->second;
    }
    if (!p.fitted()) {
      if (auto f = model_->steady_fit(avgs[i], mesh_, i, q_)) p = *f;
    }
    cell(i).profile = p;
    fill_cache(i);
  }
}

double SteadyFrame::max_speed(std::span<const State> avgs) const {
  double s = 0.0;
  for (int i = 0; i < mesh_.nx(); ++i) {
    s = std::max(s, model_->max_wave_speed(avgs[i]));
    s = std::max(s, cell(i).speed);
  }
  return s;
}

void SteadyFrame::extend(BoundaryKind kind, int ghosts, std::span<const State> avgs) {
  const int nx = mesh_.nx();
  if (ghosts < 1) throw ConfigError("steady frame: at least one ghost layer required");
  kind_ = kind;
  std::vector<Cell> interior_cells(cells_.begin() + ghosts_, cells_.begin() + ghosts_ + nx);
  ghosts_ = ghosts;
  cells_.assign(static_cast<std::size_t>(nx + 2 * ghosts), Cell{});
  for (int i = 0; i < nx; ++i) cell(i) = interior_cells[i];

  if (kind == BoundaryKind::periodic) {
    for (int g = 1; g <= ghosts; ++g) {
      for (int i : {-g, nx - 1 + g}) {
        const int src = ((i % nx) + nx) % nx;
        SteadyProfile p;
        if (auto f = model_->steady_fit(avgs[src], mesh_, i, q_)) p = *f;
        cell(i).profile = p;
        fill_cache(i);
      }
    }
    return;
  }

  for (int side = 0; side < 2; ++side) {
    const int b = side == 0 ? 0 : nx - 1;
    const int dir = side == 0 ? -1 : 1;
    bool ok = true;
    for (int g = 1; g <= ghosts && ok; ++g) {
      const int i = b + dir * g;
      cell(i).profile = cell(b).profile;
      fill_cache(i);
      ok = cell(i).profile.kind == cell(b).profile.kind;
    }
    if (!ok) {
      cell(b).profile = SteadyProfile{};
      fill_cache(b);
      for (int g = 1; g <= ghosts; ++g) {
        cell(b + dir * g).profile = SteadyProfile{};
        fill_cache(b + dir * g);
      }
    }
  }
}

State SteadyFrame::kinetic_avg(int i, int k, int sigma, double lambda) const {
  return 0.5 * avg(i, k) + (0.5 * sigma / lambda) * flux_avg(i, k);
}

std::vector<State> SteadyFrame::pad(std::span<const State> interior) const {
  const int nx = mesh_.nx();
  if (kind_ == BoundaryKind::periodic) return fill_ghosts(interior, kind_, ghosts_);
  std::vector<State> out(static_cast<std::size_t>(nx + 2 * ghosts_));
  for (int i = 0; i < nx; ++i) out[i + ghosts_] = interior[i];
  const State v_left = interior[0] - avg(0, 0);
  const State v_right = interior[nx - 1] - avg(nx - 1, 0);
  for (int g = 1; g <= ghosts_; ++g) {
    out[ghosts_ - g] = avg(-g, 0) + v_left;
    out[nx - 1 + g + ghosts_] = avg(nx - 1 + g, 0) + v_right;
  }
  return out;
}

std::vector<State> SteadyFrame::pad_kinetic(std::span<const State> interior, int sigma, double lambda) const {
  const int nx = mesh_.nx();
  if (kind_ == BoundaryKind::periodic) return fill_ghosts(interior, kind_, ghosts_);
  std::vector<State> out(static_cast<std::size_t>(nx + 2 * ghosts_));
  for (int i = 0; i < nx; ++i) out[i + ghosts_] = interior[i];
  const State v_left = interior[0] - kinetic_avg(0, 0, sigma, lambda);
  const State v_right = interior[nx - 1] - kinetic_avg(nx - 1, 0, sigma, lambda);
  for (int g = 1; g <= ghosts_; ++g) {
    out[ghosts_ - g] = kinetic_avg(-g, 0, sigma, lambda) + v_left;
    out[nx - 1 + g + ghosts_] = kinetic_avg(nx - 1 + g, 0, sigma, lambda) + v_right;
  }
  return out;
}

State continuous_eval(const SteadyFrame& frame, std::span<const State> padded_fluct, double x) {
  const Mesh1D& mesh = frame.mesh();
  const int G = frame.ghosts();
  const int j = static_cast<int>(std::floor((x - mesh.center(0)) / mesh.dx()));
  if (j < -G || j + 1 >= mesh.nx() + G)
    throw BoundaryError("continuous_eval: point " + std::to_string(x) + " outside the padded domain");
  auto P = [&](int c) {
    const auto pe = frame.eval(c, x);
    const State base = pe ? *pe : frame.avg(c, 0);
    return base + padded_fluct[static_cast<std::size_t>(c + G)];
  };
  const double alpha = (x - mesh.center(j)) / mesh.dx();
  if (alpha == 0.0) return P(j);
  return (1.0 - alpha) * P(j) + alpha * P(j + 1);
}

}  // namespace hkr
