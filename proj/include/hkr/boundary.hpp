#pragma once

#include <span>
#include <string>
#include <vector>

#include "hkr/core.hpp"

namespace hkr {

enum class BoundaryKind { periodic, free_flow };

struct SpongeConfig {
  bool enabled = false;
  int width = 10;
  double strength = 0.5;
};

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::free_flow;
  SpongeConfig sponge;
};

BoundaryKind parse_boundary_kind(const std::string& s);
std::string to_string(BoundaryKind k);

// Plain ghost filling: periodic wraps, free_flow copies the outermost interior value.
// Returns a field of size nx + 2*width with interior cell i stored at i + width.
std::vector<State> fill_ghosts(std::span<const State> field, BoundaryKind kind, int width);

// Damping factor of the j-th cell counted from the boundary (j = 0 is the outermost cell).
double sponge_factor(int j, const SpongeConfig& cfg);

// u <- background + sigma_j (u - background) in the sponge cells on both ends.
void sponge_damp(std::span<State> u, std::span<const State> background, const SpongeConfig& cfg);

}  // namespace hkr
