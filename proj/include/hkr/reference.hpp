#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "hkr/boundary.hpp"
#include "hkr/core.hpp"
#include "hkr/models.hpp"
#include "hkr/reconstruction.hpp"

namespace hkr {

// Local Lax-Friedrichs (Rusanov) flux.
State llf_flux(const Model& model, const State& ul, const State& ur);

// First-order exactly well-balanced finite volume scheme with LLF flux and forward Euler.
class LlfSolver {
 public:
  LlfSolver(std::shared_ptr<const Model> model, const Mesh1D& mesh, double cfl, BoundaryKind bc,
            std::vector<State> u0, std::map<int, SteadyProfile> pinned = {});

  double step(double dt_max);
  void advance_to(double t_end);
  const std::vector<State>& solution() const { return u_; }
  double time() const { return t_; }

 private:
  std::shared_ptr<const Model> model_;
  Mesh1D mesh_;
  double cfl_;
  BoundaryKind bc_;
  std::map<int, SteadyProfile> pinned_;
  SteadyFrame frame_;
  std::vector<State> u_;
  double t_ = 0.0;
};

// One forward-Euler LLF step with dt = cfl dx / max speed (capped by dt_max); returns the step used.
double llf_wb_step(const Model& model, const Mesh1D& mesh, std::vector<State>& u, double cfl, BoundaryKind bc,
                   double dt_max = 1e300);

// Block average of a fine field onto nx_coarse cells; nx_fine must be a multiple of nx_coarse.
std::vector<State> restrict_average(std::span<const State> fine, int nx_coarse);

}  // namespace hkr
