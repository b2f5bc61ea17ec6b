#include "hkr/transport.hpp"

#include <cmath>

namespace hkr {

int explicit_ghosts() { return 2; }

int sl_ghosts(double lambda, double dt, double dx) {
  return static_cast<int>(std::ceil(lambda * std::abs(dt) / dx)) + 2;
}

namespace {

struct Traces {
  std::vector<State> left, right, left_flux, right_flux;  // index i + 1 for i in [-1, nx]
};

// Well-balanced interface traces P_i(x_{i-1/2}), P_i(x_{i+1/2}) of the macroscopic reconstruction.
Traces macroscopic_traces(std::span<const State> padded, const TransportSetup& s) {
  const SteadyFrame& fr = *s.frame;
  const Model& model = fr.model();
  const int nx = fr.nx(), G = fr.ghosts(), m = model.m();
  Traces t;
  t.left.resize(nx + 2);
  t.right.resize(nx + 2);
  t.left_flux.resize(nx + 2);
  t.right_flux.resize(nx + 2);
  for (int i = -1; i <= nx; ++i) {
    std::array<State, 3> v;
    for (int k = -1; k <= 1; ++k) v[k + 1] = padded[i + k + G] - fr.avg(i, k);
    const LocalPoly Q = base_reconstruct(s.base, v[0], v[1], v[2], m, fr.mesh().dx(), s.cweno, s.limiter);
    const State L = fr.face(i, 0) + Q(-0.5);
    const State R = fr.face(i, 1) + Q(0.5);
    model.require_admissible(L, i);
    model.require_admissible(R, i);
    t.left[i + 1] = L;
    t.right[i + 1] = R;
    t.left_flux[i + 1] = model.flux(L);
    t.right_flux[i + 1] = model.flux(R);
  }
  return t;
}

void check_courant(double lambda, double dt, double dx) {
  const double c = lambda * std::abs(dt) / dx;
  if (c > 1.0 + 1e-12)
    throw ConfigError("explicit transport: Courant number " + std::to_string(c) + " exceeds 1");
}

}  // namespace

void explicit_increment(std::span<const State> u, double dt, const TransportSetup& s, std::vector<State>& dplus,
                        std::vector<State>& dminus) {
  const SteadyFrame& fr = *s.frame;
  const int nx = fr.nx();
  if (fr.ghosts() < explicit_ghosts()) throw BoundaryError("explicit transport: frame has too few ghost layers");
  const auto padded = fr.pad(u);
  const Traces t = macroscopic_traces(padded, s);
  const double lam = s.lambda;
  for (int sigma : {1, -1}) {
    auto& d = sigma > 0 ? dplus : dminus;
    d.assign(nx, State{});
    const double c = sigma * lam * dt / fr.mesh().dx();
    if (c == 0.0) continue;
    auto upwind = [&](int face) {  // flux at x_{face - 1/2}
      return c > 0.0 ? maxwellian_from_flux(t.right[face], t.right_flux[face], lam, sigma)
                     : maxwellian_from_flux(t.left[face + 1], t.left_flux[face + 1], lam, sigma);
    };
    for (int i = 0; i < nx; ++i) {
      const State Fr = upwind(i + 1), Fl = upwind(i);
      const State eR = maxwellian_from_flux(fr.face(i, 1), fr.face_flux(i, 1), lam, sigma);
      const State eL = maxwellian_from_flux(fr.face(i, 0), fr.face_flux(i, 0), lam, sigma);
      d[i] = -c * (Fr - Fl) + c * (eR - eL);
    }
  }
}

void fv_explicit_step(KineticField& f, double dt, const TransportSetup& s, bool rk2) {
  check_courant(s.lambda, dt, s.frame->mesh().dx());
  std::vector<State> dp, dm;
  explicit_increment(f.macroscopic(), dt, s, dp, dm);
  const int nx = f.nx();
  if (!rk2) {
    for (int i = 0; i < nx; ++i) {
      f.plus[i] += dp[i];
      f.minus[i] += dm[i];
    }
    return;
  }
  KineticField f1 = f;
  for (int i = 0; i < nx; ++i) {
    f1.plus[i] += dp[i];
    f1.minus[i] += dm[i];
  }
  explicit_increment(f1.macroscopic(), dt, s, dp, dm);
  for (int i = 0; i < nx; ++i) {
    f.plus[i] = 0.5 * (f.plus[i] + f1.plus[i] + dp[i]);
    f.minus[i] = 0.5 * (f.minus[i] + f1.minus[i] + dm[i]);
  }
}

std::vector<State> upwind_sweep(std::span<const State> r, double a, int direction, SweepClosure closure,
                                const State& ghost) {
  const int n = static_cast<int>(r.size());
  if (std::abs(1.0 + a) < 1e-14) throw NumericalError("implicit transport: singular sweep coefficient");
  std::vector<State> d(n);
  if (n == 0) return d;
  const double inv = 1.0 / (1.0 + a);
  auto at = [&](int k) { return direction > 0 ? k : n - 1 - k; };

  if (closure == SweepClosure::periodic) {
    // d_k = alpha_k + beta_k s with s the (unknown) last value of the sweep.
    std::vector<State> alpha(n);
    double beta = a * inv;
    alpha[0] = inv * r[at(0)];
    for (int k = 1; k < n; ++k) {
      alpha[k] = inv * (r[at(k)] + a * alpha[k - 1]);
      beta *= a * inv;
    }
    if (std::abs(1.0 - beta) < 1e-14) throw NumericalError("implicit transport: singular periodic closure");
    const State last = alpha[n - 1] / (1.0 - beta);
    double b = a * inv;
    for (int k = 0; k < n; ++k) {
      d[at(k)] = alpha[k] + b * last;
      b *= a * inv;
    }
    d[at(n - 1)] = last;
    return d;
  }

  State prev;
  if (closure == SweepClosure::fixed) {
    prev = ghost;
    d[at(0)] = inv * (r[at(0)] + a * prev);
  } else {
    d[at(0)] = r[at(0)];
  }
  for (int k = 1; k < n; ++k) d[at(k)] = inv * (r[at(k)] + a * d[at(k - 1)]);
  return d;
}

void fv_implicit_step(KineticField& f, double dt, const TransportSetup& s, double theta) {
  const SteadyFrame& fr = *s.frame;
  const Model& model = fr.model();
  const int nx = fr.nx(), G = fr.ghosts(), m = model.m();
  if (G < explicit_ghosts()) throw BoundaryError("implicit transport: frame has too few ghost layers");
  const double lam = s.lambda, dx = fr.mesh().dx();
  const SweepClosure closure =
      fr.boundary() == BoundaryKind::periodic ? SweepClosure::periodic : SweepClosure::free_flow;

  for (int sigma : {1, -1}) {
    const double c = sigma * lam * dt / dx;
    if (c == 0.0) continue;
    std::vector<State>& fs = f.family(sigma);
    const auto padded = fr.pad_kinetic(fs, sigma, lam);
    std::vector<State> TL(nx + 2), TR(nx + 2);
    for (int i = -1; i <= nx; ++i) {
      std::array<State, 3> v;
      for (int k = -1; k <= 1; ++k) v[k + 1] = padded[i + k + G] - fr.kinetic_avg(i, k, sigma, lam);
      const LocalPoly Q = base_reconstruct(s.base, v[0], v[1], v[2], m, dx, s.cweno, s.limiter);
      TL[i + 1] = maxwellian_from_flux(fr.face(i, 0), fr.face_flux(i, 0), lam, sigma) + Q(-0.5);
      TR[i + 1] = maxwellian_from_flux(fr.face(i, 1), fr.face_flux(i, 1), lam, sigma) + Q(0.5);
    }
    std::vector<State> r(nx);
    for (int i = 0; i < nx; ++i) {
      const State eR = maxwellian_from_flux(fr.face(i, 1), fr.face_flux(i, 1), lam, sigma);
      const State eL = maxwellian_from_flux(fr.face(i, 0), fr.face_flux(i, 0), lam, sigma);
      const State jump = c > 0.0 ? TR[i + 1] - TR[i] : TL[i + 2] - TL[i + 1];
      r[i] = -c * jump + c * (eR - eL);
    }
    const auto d = upwind_sweep(r, theta * std::abs(c), c > 0.0 ? 1 : -1, closure);
    for (int i = 0; i < nx; ++i) fs[i] += d[i];
  }
}

void sl_step(KineticField& f, double dt, const TransportSetup& s) {
  const SteadyFrame& fr = *s.frame;
  const Model& model = fr.model();
  const Mesh1D& mesh = fr.mesh();
  const int nx = fr.nx(), G = fr.ghosts();
  const double lam = s.lambda;
  if (G < sl_ghosts(lam, dt, mesh.dx()))
    throw BoundaryError("semi-Lagrangian transport: characteristic feet leave the padded domain");
  const auto padded = fr.pad(f.macroscopic());
  std::vector<State> fluct(padded.size());
  for (int j = -G; j < nx + G; ++j) fluct[j + G] = padded[j + G] - fr.avg(j, 0);

  KineticField out = f;
  for (int i = 0; i < nx; ++i) {
    for (int sigma : {1, -1}) {
      const double foot = mesh.center(i) - sigma * lam * dt;
      const State P = continuous_eval(fr, fluct, foot);
      model.require_admissible(P, i);
      State fs = maxwellian(model, P, lam, sigma);
      if (fr.profile(i).fitted()) {
        const auto pe = fr.eval(i, foot);
        if (pe && model.admissible(*pe))
          fs += maxwellian_from_flux(fr.center_value(i), fr.center_flux(i), lam, sigma) -
                maxwellian(model, *pe, lam, sigma);
      }
      out.family(sigma)[i] = fs;
    }
  }
  f = std::move(out);
}

}  // namespace hkr
