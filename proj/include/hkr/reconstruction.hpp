#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hkr/boundary.hpp"
#include "hkr/core.hpp"
#include "hkr/models.hpp"

namespace hkr {

enum class BaseRecon { constant, muscl, cwenoz3 };
enum class SlopeLimiter { minmod, van_leer };

std::string to_string(BaseRecon b);
std::string to_string(SlopeLimiter l);

struct CwenoParams {
  double d0 = 0.5, d1 = 0.25, d2 = 0.25;
  double eps_factor = 1.0;  // epsilon = eps_factor * dx^2
};

// Polynomial c0 + c1*xi + c2*xi^2 in the local coordinate xi = (x - x_i)/dx, xi in [-1/2, 1/2].
struct LocalPoly {
  State c0, c1, c2;
  State operator()(double xi) const { return c0 + xi * (c1 + xi * c2); }
};

double minmod(double a, double b);
// Harmonic-mean limiter 2ab/(a+b), zero when a and b differ in sign.
double van_leer(double a, double b);
double limit_slope(SlopeLimiter l, double a, double b);

// Base reconstruction of cell i from the stencil (v_{i-1}, v_i, v_{i+1}), component-wise.
LocalPoly base_reconstruct(BaseRecon kind, const State& vm, const State& v0, const State& vp, int m, double dx,
                           const CwenoParams& cweno = {}, SlopeLimiter limiter = SlopeLimiter::minmod);

State recon_constant(const std::array<State, 3>& stencil, double xi);
State recon_muscl(const std::array<State, 3>& stencil, double xi, int m, SlopeLimiter limiter = SlopeLimiter::minmod);
State recon_cwenoz3(const std::array<State, 3>& stencil, double xi, int m, double dx, const CwenoParams& cweno = {});

// Nonlinear CWENOZ3 weights (w0, w1, w2) for one scalar stencil.
std::array<double, 3> cwenoz3_weights(double vm, double v0, double vp, double dx, const CwenoParams& cweno = {});

// Well-balanced reconstruction of a single cell: P_i(x) = p_i(x) + Q_i((x - x_i)/dx).
struct WBRecon {
  SteadyProfile profile;
  LocalPoly fluct;
  double center = 0.0;
  double dx = 1.0;

  State eval(const Model& model, double x) const;
};

// Stand-alone wrapper around a base reconstruction: fits the cell's own profile, falls back to the
// zero profile when the fit fails or the profile is not evaluable on the stencil.
WBRecon wb_wrap(BaseRecon base, int cell, const std::array<State, 3>& stencil, const Model& model, const Mesh1D& mesh,
                const QuadratureRule& q, const CwenoParams& cweno = {});

// Steady data frozen for one outer time step: per-cell profiles (interior and ghosts) and cached
// quadrature averages and traces of each profile over its three-cell stencil.
class SteadyFrame {
 public:
  SteadyFrame(const Model& model, const Mesh1D& mesh, const QuadratureRule& q);

  // Fit interior profiles to the averages; `pinned` overrides the fit in the listed cells.
  void fit(std::span<const State> avgs, const std::map<int, SteadyProfile>* pinned = nullptr);
  // Largest wave speed of the averages and of the fitted profiles at nodes and interfaces.
  double max_speed(std::span<const State> avgs) const;
  // Build ghost profiles and all caches; must follow fit().
  void extend(BoundaryKind kind, int ghosts, std::span<const State> avgs);

  const Model& model() const { return *model_; }
  const Mesh1D& mesh() const { return mesh_; }
  const QuadratureRule& quadrature() const { return q_; }
  int ghosts() const { return ghosts_; }
  int nx() const { return mesh_.nx(); }
  BoundaryKind boundary() const { return kind_; }

  // Cell indices below run over [-ghosts, nx + ghosts).
  const SteadyProfile& profile(int i) const { return cell(i).profile; }
  // Quadrature average of p_i over cell i + k, k in {-1, 0, 1}.
  const State& avg(int i, int k) const { return cell(i).avg[k + 1]; }
  const State& flux_avg(int i, int k) const { return cell(i).flux_avg[k + 1]; }
  // Traces of p_i at x_{i-1/2} (side 0) and x_{i+1/2} (side 1), and at the center.
  const State& face(int i, int side) const { return cell(i).face[side]; }
  const State& face_flux(int i, int side) const { return cell(i).face_flux[side]; }
  const State& center_value(int i) const { return cell(i).center; }
  const State& center_flux(int i) const { return cell(i).center_flux; }
  // Kinetic equilibrium average m_sigma(p_i) over cell i + k.
  State kinetic_avg(int i, int k, int sigma, double lambda) const;
  std::optional<State> eval(int i, double x) const { return model_->steady_eval(profile(i), x); }

  // Pad interior averages with ghosts consistent with the steady extension.
  std::vector<State> pad(std::span<const State> interior) const;
  // Same for one kinetic family.
  std::vector<State> pad_kinetic(std::span<const State> interior, int sigma, double lambda) const;

 private:
  struct Cell {
    SteadyProfile profile;
    std::array<State, 3> avg{}, flux_avg{};
    std::array<State, 2> face{}, face_flux{};
    State center{}, center_flux{};
    double speed = 0.0;
  };

  const Cell& cell(int i) const { return cells_[static_cast<std::size_t>(i + ghosts_)]; }
  Cell& cell(int i) { return cells_[static_cast<std::size_t>(i + ghosts_)]; }
  void fill_cache(int i);

  const Model* model_;
  Mesh1D mesh_;
  QuadratureRule q_;
  BoundaryKind kind_ = BoundaryKind::free_flow;
  int ghosts_ = 0;
  std::vector<Cell> cells_;
};

// Globally continuous evaluation of the per-cell reconstructions P_j(x) = p_j(x) + v_j (constant base),
// blending P_j and P_{j+1} linearly on the dual cell [x_j, x_{j+1}]. `fluct` is indexed like the frame.
State continuous_eval(const SteadyFrame& frame, std::span<const State> padded_fluct, double x);

}  // namespace hkr
