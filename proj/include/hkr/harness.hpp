#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hkr/boundary.hpp"
#include "hkr/core.hpp"
#include "hkr/kinetic.hpp"
#include "hkr/models.hpp"
#include "hkr/splitting.hpp"

namespace hkr {

class NaturalCubicSpline {
 public:
  NaturalCubicSpline(std::vector<double> x, std::vector<double> y);
  // Linear extension with the end slopes outside [x_0, x_n].
  double operator()(double x) const;
  double derivative(double x) const;

 private:
  std::size_t interval(double x) const;
  std::vector<double> x_, y_, m_;  // m_ holds second derivatives
};

// Control points of the Test 8 bathymetry (equally spaced on [-5, 5]).
const std::vector<double>& test8_control_heights();

enum class ModelKind { burgers, swe, euler };

struct CaseDef {
  std::string id;     // e.g. "4A"
  std::string group;  // e.g. "4"
  std::string title;
  ModelKind model = ModelKind::burgers;
  double param = 0.0;  // alpha, g or gamma
  Geometry geometry = Geometry::flat();
  double a = 0.0, b = 1.0;
  int nx = 100;
  double cfl = 0.9;
  double t_end = 1.0;
  BoundaryKind bc = BoundaryKind::free_flow;
  std::function<State(double)> initial;
  std::function<State(double)> background;  // exact steady state used for L1 errors, if any
  std::vector<std::array<double, 2>> windows;
  std::vector<SchemeLabel> schemes;
  double threshold = -1.0;  // L1 acceptance threshold against the background, negative for none
  bool slow = false;
  bool pin_center = false;
  bool sponge = false;
  int reference_factor = 16;
  std::vector<double> cfl_sweep;
  double relax_C = 1.0;  // default constant in omega = 2 - C dt
  SlopeLimiter limiter = SlopeLimiter::van_leer;  // MUSCL schemes
};

const std::vector<CaseDef>& case_registry();
// Accepts sub-scenario ids ("4A") and group ids ("4" selects the first scenario).
const CaseDef& find_case(const std::string& id);
// One entry per test group: group id and a one-line description.
std::vector<std::pair<std::string, std::string>> case_groups();

struct RunOptions {
  std::optional<int> nx;
  std::optional<double> cfl;
  std::optional<double> t_end;
  std::optional<BoundaryKind> bc;
  std::optional<RelaxLaw> relax_law;
  std::optional<double> relax_C;
  std::optional<double> relax_c_tau;
  double lambda_safety = 1.0;
  double lambda_min = 1e-8;
  std::optional<bool> sponge;
  SpongeConfig sponge_params;
  std::optional<SlopeLimiter> limiter;  // case default when unset
  CwenoParams cweno;
  EulerFitPolicy euler_fit = EulerFitPolicy::hydrostatic;
  bool pin = true;
  int pin_cells = 3;  // cells around the critical point that carry the exact profile (1 or 3)
  bool compare_reference = false;
  std::optional<int> reference_factor;
  std::optional<int> reference_nx;
  std::optional<bool> richardson;

  // Dotted-key override, e.g. set("relax.C", "2"); throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
};

std::vector<std::string> option_keys();

std::shared_ptr<const Model> make_model(const CaseDef& c, const RunOptions& o = {});

struct RunResult {
  std::string case_id;
  SchemeLabel scheme = SchemeLabel::o1_exp;
  double a = 0.0, b = 1.0;
  int nx = 0;
  double cfl = 0.0;
  double t_end = 0.0;
  std::vector<std::string> names;
  std::vector<double> x;
  std::vector<State> solution;
  std::vector<State> steady;          // background averages, empty when the case has none
  std::vector<double> errors;         // L1 against the background (windowed when the case says so)
  std::vector<double> reference_errors;  // L1 against the LLF reference, when requested
  double threshold = -1.0;
  bool passed = true;
  long steps = 0;
  double seconds = 0.0;

  bool has_threshold() const { return threshold >= 0.0; }
};

RunResult run_case(const std::string& id, SchemeLabel scheme, const RunOptions& o = {});

// LLF reference for the case on nx_ref cells, block-averaged onto nx cells.
std::vector<State> make_reference(const CaseDef& c, const RunOptions& o, int nx, int nx_ref);
// Reference used by the harness: cached, optionally Richardson-extrapolated from nx_ref and 2 nx_ref.
std::vector<State> reference_solution(const CaseDef& c, const RunOptions& o, int nx);

struct ConvergenceRow {
  int nx = 0;
  std::vector<double> error;
  std::vector<double> order;  // NaN on the first row
};

struct ConvergenceTable {
  std::string case_id;
  SchemeLabel scheme = SchemeLabel::o1_exp;
  std::vector<std::string> names;
  std::vector<ConvergenceRow> rows;
};

std::vector<int> default_convergence_meshes(SchemeLabel s);
ConvergenceTable convergence_study(const std::string& id, SchemeLabel scheme, const std::vector<int>& nx_list,
                                   const RunOptions& o = {});
// Reference mesh used by convergence_study when neither reference.nx nor reference.factor is given.
// That default is Richardson-extrapolated from kConvergenceReferenceNx and twice it (12800 cells)
// unless reference.richardson says otherwise.
inline constexpr int kConvergenceReferenceNx = 6400;

struct OrderTarget {
  SchemeLabel scheme;
  int nx;
  double h_order;
};
// Target final-row h-orders for Test 11.
const std::vector<OrderTarget>& test11_order_targets();
inline constexpr double kOrderTolerance = 0.25;
bool convergence_passed(const ConvergenceTable& t);

std::string format_double(double v);
void write_solution_csv(const RunResult& r, const std::string& path);
void write_summary_csv(const std::vector<RunResult>& results, const std::string& path);
void write_convergence_csv(const ConvergenceTable& t, const std::string& path);

}  // namespace hkr
