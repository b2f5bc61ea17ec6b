#include "hkr/boundary.hpp"

#include <algorithm>

namespace hkr {

BoundaryKind parse_boundary_kind(const std::string& s) {
  if (s == "periodic") return BoundaryKind::periodic;
  if (s == "free_flow" || s == "free-flow") return BoundaryKind::free_flow;
  throw ConfigError("unknown boundary kind '" + s + "' (expected periodic or free_flow)");
}

std::string to_string(BoundaryKind k) { return k == BoundaryKind::periodic ? "periodic" : "free_flow"; }

std::vector<State> fill_ghosts(std::span<const State> field, BoundaryKind kind, int width) {
  const int nx = static_cast<int>(field.size());
  if (nx == 0) throw ConfigError("fill_ghosts: empty field");
  if (width < 0) throw ConfigError("fill_ghosts: negative width");
  std::vector<State> out(static_cast<std::size_t>(nx + 2 * width));
  for (int p = 0; p < nx + 2 * width; ++p) {
    const int i = p - width;
    int src;
    if (kind == BoundaryKind::periodic)
      src = ((i % nx) + nx) % nx;
    else
      src = std::clamp(i, 0, nx - 1);
    out[static_cast<std::size_t>(p)] = field[static_cast<std::size_t>(src)];
  }
  return out;
}

double sponge_factor(int j, const SpongeConfig& cfg) {
  if (!cfg.enabled || j < 0 || j >= cfg.width) return 1.0;
  const double r = static_cast<double>(cfg.width - j) / cfg.width;
  return 1.0 - cfg.strength * r * r;
}

void sponge_damp(std::span<State> u, std::span<const State> background, const SpongeConfig& cfg) {
  if (!cfg.enabled) return;
  if (u.size() != background.size()) throw ConfigError("sponge_damp: background size mismatch");
  const int nx = static_cast<int>(u.size());
  for (int i = 0; i < nx; ++i) {
    const int j = std::min(i, nx - 1 - i);
    const double s = sponge_factor(j, cfg);
    if (s == 1.0) continue;
    u[i] = background[i] + s * (u[i] - background[i]);
  }
}

}  // namespace hkr
