#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hkr/core.hpp"

namespace hkr {

struct Geometry {
  std::function<double(double)> H;
  std::function<double(double)> dH;

  static Geometry flat();
};

enum class SteadyKind {
  none,
  burgers_exponential,
  swe_rest,
  swe_subcritical,
  swe_supercritical,
  swe_transcritical,  // subcritical for x <= x_switch, supercritical beyond
  euler_hydrostatic,
};

struct SteadyProfile {
  SteadyKind kind = SteadyKind::none;
  double c0 = 0.0;  // Burgers C, SWE q0, Euler C1
  double c1 = 0.0;  // SWE E0, Euler C2
  double x_switch = 0.0;

  bool fitted() const { return kind != SteadyKind::none; }
};

using Jacobian = std::array<State, kMaxComponents>;  // row k holds d S_k / d u

class Model {
 public:
  explicit Model(Geometry geometry) : geometry_(std::move(geometry)) {}
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual int m() const = 0;
  virtual std::vector<std::string> component_names() const = 0;

  virtual State flux(const State& u) const = 0;
  virtual State source(const State& u, double x) const = 0;
  virtual Jacobian source_jacobian(const State& u, double x) const = 0;
  virtual double max_wave_speed(const State& u) const = 0;
  virtual bool admissible(const State& u) const = 0;

  // Fit a member of the steady family whose quadrature average over `cell` is `avg`.
  virtual std::optional<SteadyProfile> steady_fit(const State& avg, const Mesh1D& mesh, int cell,
                                                  const QuadratureRule& q) const = 0;
  // Pointwise value of a profile; nullopt where the profile has no admissible value.
  // The unfitted profile evaluates to zero everywhere.
  std::optional<State> steady_eval(const SteadyProfile& p, double x) const;

  void require_admissible(const State& u, int cell) const;
  double rest_tolerance(const State& avg) const;
  const Geometry& geometry() const { return geometry_; }

 protected:
  virtual std::optional<State> eval_fitted(const SteadyProfile& p, double x) const = 0;

 private:
  Geometry geometry_;
};

class BurgersModel final : public Model {
 public:
  explicit BurgersModel(double alpha) : Model(Geometry::flat()), alpha_(alpha) {}

  std::string name() const override { return "burgers"; }
  int m() const override { return 1; }
  std::vector<std::string> component_names() const override { return {"u"}; }
  State flux(const State& u) const override;
  State source(const State& u, double x) const override;
  Jacobian source_jacobian(const State& u, double x) const override;
  double max_wave_speed(const State& u) const override;
  bool admissible(const State& u) const override;
  std::optional<SteadyProfile> steady_fit(const State& avg, const Mesh1D& mesh, int cell,
                                          const QuadratureRule& q) const override;
  double alpha() const { return alpha_; }

 protected:
  std::optional<State> eval_fitted(const SteadyProfile& p, double x) const override;

 private:
  double alpha_;
};

enum class SweBranch { subcritical, supercritical };

// Positive root of h^3 - K h^2 + q0^2/(2g) = 0 on the requested branch, K = H + E0.
// The q0 = 0 case returns K (the nontrivial root).
std::optional<double> swe_branch_height(double q0, double K, double g, SweBranch branch);

class SweModel final : public Model {
 public:
  SweModel(double g, Geometry geometry) : Model(std::move(geometry)), g_(g) {}

  std::string name() const override { return "swe"; }
  int m() const override { return 2; }
  std::vector<std::string> component_names() const override { return {"h", "q"}; }
  State flux(const State& u) const override;
  State source(const State& u, double x) const override;
  Jacobian source_jacobian(const State& u, double x) const override;
  double max_wave_speed(const State& u) const override;
  bool admissible(const State& u) const override;
  std::optional<SteadyProfile> steady_fit(const State& avg, const Mesh1D& mesh, int cell,
                                          const QuadratureRule& q) const override;
  double g() const { return g_; }
  double critical_height(double q0) const;

 protected:
  std::optional<State> eval_fitted(const SteadyProfile& p, double x) const override;

 private:
  double g_;
};

enum class EulerFitPolicy {
  at_rest_only,  // no steady profile unless the cell momentum vanishes
  hydrostatic,   // fit the hydrostatic family from density and energy, momentum left as fluctuation
};

class EulerModel final : public Model {
 public:
  EulerModel(double gamma, Geometry geometry, EulerFitPolicy policy = EulerFitPolicy::hydrostatic)
      : Model(std::move(geometry)), gamma_(gamma), policy_(policy) {}

  std::string name() const override { return "euler"; }
  int m() const override { return 3; }
  std::vector<std::string> component_names() const override { return {"rho", "q", "E"}; }
  State flux(const State& u) const override;
  State source(const State& u, double x) const override;
  Jacobian source_jacobian(const State& u, double x) const override;
  double max_wave_speed(const State& u) const override;
  bool admissible(const State& u) const override;
  std::optional<SteadyProfile> steady_fit(const State& avg, const Mesh1D& mesh, int cell,
                                          const QuadratureRule& q) const override;
  double gamma() const { return gamma_; }
  double pressure(const State& u) const;
  State from_primitive(double rho, double v, double p) const;
  EulerFitPolicy policy() const { return policy_; }

 protected:
  std::optional<State> eval_fitted(const SteadyProfile& p, double x) const override;

 private:
  double gamma_;
  EulerFitPolicy policy_;
};

}  // namespace hkr
