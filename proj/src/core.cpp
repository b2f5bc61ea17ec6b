#include "hkr/core.hpp"

#include <algorithm>
#include <cmath>

namespace hkr {

bool all_finite(const State& u, int m) {
  for (int k = 0; k < m; ++k)
    if (!std::isfinite(u[k])) return false;
  return true;
}

Mesh1D::Mesh1D(double a, double b, int nx) : a_(a), b_(b), nx_(nx), dx_(0.0) {
  if (nx <= 0) throw ConfigError("mesh: nx must be positive");
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) throw ConfigError("mesh: require finite a < b");
  dx_ = (b - a) / nx;
}

QuadratureRule QuadratureRule::midpoint() { return {{0.5}, {1.0}, 2}; }

QuadratureRule QuadratureRule::gauss2() {
  const double h = 0.5 / std::sqrt(3.0);
  return {{0.5 - h, 0.5 + h}, {0.5, 0.5}, 4};
}

State cell_average(const PointwiseFn& f, const Mesh1D& mesh, int cell, const QuadratureRule& q) {
  State s;
  for (int m = 0; m < q.size(); ++m) s += q.weights[m] * f(q.node(mesh, cell, m));
  return s;
}

CellField::CellField(Mesh1D mesh, int m) : mesh_(mesh), m_(m), values_(static_cast<std::size_t>(mesh.nx())) {
  if (m < 1 || m > kMaxComponents) throw ConfigError("cell field: unsupported state dimension");
}

CellField::CellField(Mesh1D mesh, int m, std::vector<State> values) : mesh_(mesh), m_(m), values_(std::move(values)) {
  if (m < 1 || m > kMaxComponents) throw ConfigError("cell field: unsupported state dimension");
  if (static_cast<int>(values_.size()) != mesh_.nx()) throw ConfigError("cell field: value count differs from nx");
}

bool CellField::finite() const {
  return std::all_of(values_.begin(), values_.end(), [this](const State& u) { return all_finite(u, m_); });
}

CellField project(const PointwiseFn& f, const Mesh1D& mesh, int m, const QuadratureRule& q) {
  CellField out(mesh, m);
  for (int i = 0; i < mesh.nx(); ++i) out[i] = cell_average(f, mesh, i, q);
  return out;
}

static void check_compatible(const CellField& u, const CellField& ref) {
  if (!(u.mesh() == ref.mesh()) || u.m() != ref.m()) throw ConfigError("l1_error: mesh or dimension mismatch");
}

std::vector<double> l1_error(const CellField& u, const CellField& ref) {
  return l1_error_windowed(u, ref, {});
}

std::vector<double> l1_error_windowed(const CellField& u, const CellField& ref,
                                      const std::vector<std::array<double, 2>>& windows) {
  check_compatible(u, ref);
  std::vector<double> err(static_cast<std::size_t>(u.m()), 0.0);
  const Mesh1D& mesh = u.mesh();
  for (int i = 0; i < mesh.nx(); ++i) {
    if (!windows.empty()) {
      const double x = mesh.center(i);
      const bool inside =
          std::any_of(windows.begin(), windows.end(), [x](const auto& w) { return x >= w[0] && x <= w[1]; });
      if (!inside) continue;
    }
    for (int k = 0; k < u.m(); ++k) err[k] += std::abs(u[i][k] - ref[i][k]);
  }
  for (auto& e : err) e *= mesh.dx();
  return err;
}

std::vector<double> max_norm(const CellField& u) {
  std::vector<double> out(static_cast<std::size_t>(u.m()), 0.0);
  for (int i = 0; i < u.nx(); ++i)
    for (int k = 0; k < u.m(); ++k) out[k] = std::max(out[k], std::abs(u[i][k]));
  return out;
}

}  // namespace hkr
