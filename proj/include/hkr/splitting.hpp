#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hkr/boundary.hpp"
#include "hkr/kinetic.hpp"
#include "hkr/reconstruction.hpp"
#include "hkr/transport.hpp"

namespace hkr {

enum class SchemeLabel { o1_exp, o2_exp, o3_exp, o1_imp, o2_imp, sl_o1 };
enum class TransportKind { explicit_fv, implicit_fv, semi_lagrangian };
enum class Splitting { lie, strang, suzuki };

struct SchemeTraits {
  TransportKind transport;
  BaseRecon base;
  Splitting splitting;
  bool rk2;      // explicit only
  double theta;  // implicit only
  int quadrature_points;
};

inline constexpr std::array<SchemeLabel, 6> kAllSchemes{SchemeLabel::o1_exp, SchemeLabel::o2_exp,
                                                        SchemeLabel::o3_exp, SchemeLabel::o1_imp,
                                                        SchemeLabel::o2_imp, SchemeLabel::sl_o1};

SchemeTraits traits(SchemeLabel s);
std::string_view label(SchemeLabel s);
std::optional<SchemeLabel> parse_scheme(std::string_view text);
// Comma-separated list of every valid label.
std::string scheme_list();
bool is_explicit(SchemeLabel s);
int nominal_order(SchemeLabel s);
QuadratureRule quadrature_for(SchemeLabel s);

using SubStep = std::function<void(double)>;

// Coefficients of the fourth-order Suzuki composition; they sum to one.
std::array<double, 5> suzuki_coefficients();

// R(dt) after T(dt).
void lie_step(const SubStep& T, const SubStep& R, double dt);
// T(dt/2), R(dt), T(dt/2).
void strang_step(const SubStep& T, const SubStep& R, double dt);
// Five inner steps T(h/4) R(h/2) T(h/2) R(h/2) T(h/4) with h = gamma_k dt.
void suzuki_step(const SubStep& T, const SubStep& R, double dt);
void compose(Splitting s, const SubStep& T, const SubStep& R, double dt);

struct SolverConfig {
  SchemeLabel scheme = SchemeLabel::o1_exp;
  double cfl = 0.9;
  BoundaryCondition bc;
  RelaxConfig relax;
  double lambda_safety = 1.0;
  double lambda_min = 1e-8;
  CwenoParams cweno;
  SlopeLimiter limiter = SlopeLimiter::van_leer;  // MUSCL schemes only
  std::map<int, SteadyProfile> pinned;
  std::vector<State> sponge_background;  // required when the sponge is enabled
};

class Solver {
 public:
  Solver(std::shared_ptr<const Model> model, const Mesh1D& mesh, SolverConfig cfg, std::vector<State> u0);

  // Advance by one outer step of at most dt_max; returns the step taken.
  double step(double dt_max);
  void advance_to(double t_end);

  double time() const { return t_; }
  double lambda() const { return lambda_; }
  long steps() const { return steps_; }
  const KineticField& kinetic() const { return f_; }
  std::vector<State> solution() const { return f_.macroscopic(); }
  CellField field() const;
  const Mesh1D& mesh() const { return mesh_; }
  const Model& model() const { return *model_; }
  const SolverConfig& config() const { return cfg_; }

 private:
  void refit(const std::vector<State>& u);
  void transport(double dt);

  std::shared_ptr<const Model> model_;
  Mesh1D mesh_;
  SolverConfig cfg_;
  SchemeTraits traits_;
  QuadratureRule quad_;
  SteadyFrame frame_;
  KineticField f_;
  double lambda_ = 1.0;
  double t_ = 0.0;
  long steps_ = 0;
};

}  // namespace hkr
