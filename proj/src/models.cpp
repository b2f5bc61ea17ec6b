#include "hkr/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hkr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string state_text(const State& u, int m) {
  std::string s = "(";
  for (int k = 0; k < m; ++k) {
    if (k) s += ", ";
    s += std::to_string(u[k]);
  }
  return s + ")";
}

}  // namespace

Geometry Geometry::flat() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

std::optional<State> Model::steady_eval(const SteadyProfile& p, double x) const {
  if (!p.fitted()) return State{};
  return eval_fitted(p, x);
}

void Model::require_admissible(const State& u, int cell) const {
  if (!admissible(u))
    throw PositivityError(name() + ": inadmissible state " + state_text(u, m()) + " in cell " + std::to_string(cell),
                          cell);
}

double Model::rest_tolerance(const State& avg) const {
  double scale = 0.0;
  for (int k = 0; k < m(); ++k) scale = std::max(scale, std::abs(avg[k]));
  return 1e-12 * (1.0 + scale);
}

// ---------------------------------------------------------------- Burgers

State BurgersModel::flux(const State& u) const { return State{{0.5 * u[0] * u[0]}}; }

State BurgersModel::source(const State& u, double) const { return State{{alpha_ * u[0] * u[0]}}; }

Jacobian BurgersModel::source_jacobian(const State& u, double) const {
  Jacobian j{};
  j[0][0] = 2.0 * alpha_ * u[0];
  return j;
}

double BurgersModel::max_wave_speed(const State& u) const { return std::abs(u[0]); }

bool BurgersModel::admissible(const State& u) const { return std::isfinite(u[0]); }

std::optional<SteadyProfile> BurgersModel::steady_fit(const State& avg, const Mesh1D& mesh, int cell,
                                                      const QuadratureRule& q) const {
  double s = 0.0;
  for (int m = 0; m < q.size(); ++m) s += q.weights[m] * std::exp(alpha_ * q.node(mesh, cell, m));
  return SteadyProfile{SteadyKind::burgers_exponential, avg[0] / s, 0.0, 0.0};
}

std::optional<State> BurgersModel::eval_fitted(const SteadyProfile& p, double x) const {
  return State{{p.c0 * std::exp(alpha_ * x)}};
}

// ---------------------------------------------------------------- shallow water

std::optional<double> swe_branch_height(double q0, double K, double g, SweBranch branch) {
  if (!(K > 0.0) || !std::isfinite(K)) return std::nullopt;
  const double c = q0 * q0 / (2.0 * g);
  if (c == 0.0) return branch == SweBranch::subcritical ? std::optional<double>(K) : std::nullopt;
  const double hc = 2.0 * K / 3.0;
  const double k_min = 1.5 * std::cbrt(q0 * q0 / g);
  if (K < k_min) {
    if (K >= k_min * (1.0 - 1e-12)) return hc;
    return std::nullopt;
  }
  auto phi = [&](double h) { return (h - K) * h * h + c; };
  auto dphi = [&](double h) { return (3.0 * h - 2.0 * K) * h; };

  double lo, hi, h;
  if (branch == SweBranch::subcritical) {
    lo = hc;
    hi = K;
    h = K - c / (K * K);
  } else {
    lo = 0.0;
    hi = hc;
    h = std::sqrt(c / K);
  }
  if (!(h > lo && h < hi)) h = 0.5 * (lo + hi);
  // phi(lo) and phi(hi) straddle zero: sub has phi(hc) <= 0 < phi(K), super has phi(0) > 0 >= phi(hc).
  const bool increasing = branch == SweBranch::subcritical;
  for (int it = 0; it < 200; ++it) {
    const double f = phi(h);
    if (f == 0.0) break;
    if ((f > 0.0) == increasing)
      hi = h;
    else
      lo = h;
    const double d = dphi(h);
    double next = (d != 0.0) ? h - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - h);
    h = next;
    if (step <= 2.0 * kEps * h || hi - lo <= 2.0 * kEps * hi) break;
  }
  return h;
}

State SweModel::flux(const State& u) const {
  const double h = u[0], q = u[1];
  if (!(h > 0.0)) throw PositivityError("swe: non-positive depth in flux");
  return State{{q, q * q / h + 0.5 * g_ * h * h}};
}

State SweModel::source(const State& u, double x) const {
  return State{{0.0, g_ * u[0] * geometry().dH(x)}};
}

Jacobian SweModel::source_jacobian(const State&, double x) const {
  Jacobian j{};
  j[1][0] = g_ * geometry().dH(x);
  return j;
}

double SweModel::max_wave_speed(const State& u) const {
  if (!(u[0] > 0.0)) throw PositivityError("swe: non-positive depth in wave speed");
  return std::abs(u[1] / u[0]) + std::sqrt(g_ * u[0]);
}

bool SweModel::admissible(const State& u) const { return u[0] > 0.0 && std::isfinite(u[0]) && std::isfinite(u[1]); }

double SweModel::critical_height(double q0) const { return std::cbrt(q0 * q0 / g_); }

std::optional<SteadyProfile> SweModel::steady_fit(const State& avg, const Mesh1D& mesh, int cell,
                                                  const QuadratureRule& q) const {
  const double hbar = avg[0], qbar = avg[1];
  if (!(hbar > 0.0) || !std::isfinite(qbar)) return std::nullopt;
  const int M = q.size();
  std::array<double, 8> H{};
  double mean_H = 0.0;
  for (int m = 0; m < M; ++m) {
    H[m] = geometry().H(q.node(mesh, cell, m));
    mean_H += q.weights[m] * H[m];
  }
  if (std::abs(qbar) <= rest_tolerance(avg)) {
    const double E0 = hbar - mean_H;
    for (int m = 0; m < M; ++m)
      if (!(E0 + H[m] > 0.0)) return std::nullopt;
    return SteadyProfile{SteadyKind::swe_rest, 0.0, E0, 0.0};
  }

  const double froude = std::abs(qbar) / (hbar * std::sqrt(g_ * hbar));
  const SweBranch branch = froude < 1.0 ? SweBranch::subcritical : SweBranch::supercritical;
  const bool sub = branch == SweBranch::subcritical;

  const double k_min = 1.5 * critical_height(qbar);
  double lo = -std::numeric_limits<double>::infinity();
  for (int m = 0; m < M; ++m) lo = std::max(lo, k_min - H[m]);
  const double e_min = lo;

  // Average mismatch G(E0) and its derivative; G is increasing on the subcritical branch.
  // For E0 >= e_min every node has K >= k_min; the clamp only absorbs rounding in lo + H.
  auto mismatch = [&](double E0, double* dG) -> std::optional<double> {
    double g = -hbar, d = 0.0;
    for (int m = 0; m < M; ++m) {
      const double K = E0 >= e_min ? std::max(E0 + H[m], k_min) : E0 + H[m];
      const auto h = swe_branch_height(qbar, K, g_, branch);
      if (!h) return std::nullopt;
      g += q.weights[m] * *h;
      const double denom = 3.0 * *h - 2.0 * K;
      d += q.weights[m] * (denom != 0.0 ? *h / denom : (sub ? 1e300 : -1e300));
    }
    if (dG) *dG = d;
    return g;
  };

  const auto g_lo = mismatch(lo, nullptr);
  if (!g_lo) return std::nullopt;
  if (*g_lo == 0.0) return SteadyProfile{sub ? SteadyKind::swe_subcritical : SteadyKind::swe_supercritical, qbar, lo};
  if (sub ? *g_lo > 0.0 : *g_lo < 0.0) return std::nullopt;

  double width = std::max(1.0, hbar);
  double hi = lo + width;
  for (int it = 0;; ++it) {
    const auto g_hi = mismatch(hi, nullptr);
    if (!g_hi) return std::nullopt;
    if (sub ? *g_hi >= 0.0 : *g_hi <= 0.0) break;
    if (it > 80) return std::nullopt;
    width *= 2.0;
    hi = lo + width;
  }

  double E = qbar * qbar / (2.0 * g_ * hbar * hbar) + hbar - mean_H;
  if (!(E > lo && E < hi)) E = 0.5 * (lo + hi);
  double G = 0.0;
  for (int it = 0; it < 50; ++it) {
    double dG = 0.0;
    const auto g = mismatch(E, &dG);
    if (!g) return std::nullopt;
    G = *g;
    if (std::abs(G) <= 2.0 * kEps * hbar) break;
    if ((G > 0.0) == sub)
      hi = E;
    else
      lo = E;
    double next = E - G / dG;
    if (!std::isfinite(next) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - E);
    E = next;
    if (step <= 2.0 * kEps * std::max(1.0, std::abs(E))) {
      const auto gf = mismatch(E, nullptr);
      if (!gf) return std::nullopt;
      G = *gf;
      break;
    }
  }
  if (std::abs(G) > 1e-13 * std::max(1.0, hbar)) return std::nullopt;
  return SteadyProfile{sub ? SteadyKind::swe_subcritical : SteadyKind::swe_supercritical, qbar, E, 0.0};
}

std::optional<State> SweModel::eval_fitted(const SteadyProfile& p, double x) const {
  const double K = p.c1 + geometry().H(x);
  if (p.kind == SteadyKind::swe_rest) {
    if (!(K > 0.0)) return std::nullopt;
    return State{{K, 0.0}};
  }
  SweBranch branch = SweBranch::subcritical;
  if (p.kind == SteadyKind::swe_supercritical ||
      (p.kind == SteadyKind::swe_transcritical && x > p.x_switch))
    branch = SweBranch::supercritical;
  const auto h = swe_branch_height(p.c0, K, g_, branch);
  if (!h) return std::nullopt;
  return State{{*h, p.c0}};
}

// ---------------------------------------------------------------- Euler

double EulerModel::pressure(const State& u) const {
  return (gamma_ - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
}

State EulerModel::from_primitive(double rho, double v, double p) const {
  return State{{rho, rho * v, p / (gamma_ - 1.0) + 0.5 * rho * v * v}};
}

State EulerModel::flux(const State& u) const {
  if (!(u[0] > 0.0)) throw PositivityError("euler: non-positive density in flux");
  const double p = pressure(u);
  const double v = u[1] / u[0];
  return State{{u[1], u[1] * v + p, v * (u[2] + p)}};
}

State EulerModel::source(const State& u, double x) const {
  const double d = geometry().dH(x);
  return State{{0.0, -u[0] * d, -u[1] * d}};
}

Jacobian EulerModel::source_jacobian(const State&, double x) const {
  const double d = geometry().dH(x);
  Jacobian j{};
  j[1][0] = -d;
  j[2][1] = -d;
  return j;
}

double EulerModel::max_wave_speed(const State& u) const {
  if (!admissible(u)) throw PositivityError("euler: inadmissible state in wave speed");
  return std::abs(u[1] / u[0]) + std::sqrt(gamma_ * pressure(u) / u[0]);
}

bool EulerModel::admissible(const State& u) const {
  if (!(u[0] > 0.0) || !std::isfinite(u[1]) || !std::isfinite(u[2])) return false;
  return pressure(u) > 0.0;
}

std::optional<SteadyProfile> EulerModel::steady_fit(const State& avg, const Mesh1D& mesh, int cell,
                                                    const QuadratureRule& q) const {
  const double rho = avg[0];
  if (!(rho > 0.0)) return std::nullopt;
  if (policy_ == EulerFitPolicy::at_rest_only && std::abs(avg[1]) > rest_tolerance(avg)) return std::nullopt;
  double s = 0.0;
  for (int m = 0; m < q.size(); ++m) s += q.weights[m] * std::exp(-geometry().H(q.node(mesh, cell, m)));
  const double C1 = rho / s;
  const double C2 = (gamma_ - 1.0) * avg[2] - rho;
  for (int m = 0; m < q.size(); ++m)
    if (!(C1 * std::exp(-geometry().H(q.node(mesh, cell, m))) + C2 > 0.0)) return std::nullopt;
  return SteadyProfile{SteadyKind::euler_hydrostatic, C1, C2, 0.0};
}

std::optional<State> EulerModel::eval_fitted(const SteadyProfile& p, double x) const {
  const double rho = p.c0 * std::exp(-geometry().H(x));
  const double pr = rho + p.c1;
  if (!(rho > 0.0) || !(pr > 0.0)) return std::nullopt;
  return State{{rho, 0.0, pr / (gamma_ - 1.0)}};
}

}  // namespace hkr
