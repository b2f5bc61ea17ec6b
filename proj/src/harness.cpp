#include "hkr/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <mutex>
#include <numbers>

#include "hkr/reference.hpp"

namespace hkr {

// ---------------------------------------------------------------- spline

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)), m_(x_.size(), 0.0) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw ConfigError("spline: need at least two nodes and matching values");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw ConfigError("spline: nodes must be strictly increasing");
  if (n == 2) return;
  // Thomas algorithm on the interior second derivatives.
  const std::size_t k = n - 2;
  std::vector<double> diag(k), rhs(k), upper(k);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    diag[i - 1] = 2.0 * (h0 + h1);
    upper[i - 1] = h1;
    rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  for (std::size_t i = 1; i < k; ++i) {
    const double lower = x_[i + 1] - x_[i];
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m_[k] = rhs[k - 1] / diag[k - 1];
  for (std::size_t i = k - 1; i >= 1; --i) m_[i] = (rhs[i - 1] - upper[i - 1] * m_[i + 1]) / diag[i - 1];
}

std::size_t NaturalCubicSpline::interval(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin(), 1));
  return std::min(j, x_.size() - 1) - 1;
}

double NaturalCubicSpline::operator()(double x) const {
  if (x < x_.front()) return y_.front() + derivative(x_.front()) * (x - x_.front());
  if (x > x_.back()) return y_.back() + derivative(x_.back()) * (x - x_.back());
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double NaturalCubicSpline::derivative(double x) const {
  const double xc = std::clamp(x, x_.front(), x_.back());
  const std::size_t i = interval(xc);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - xc) / h, b = (xc - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h + ((1.0 - 3.0 * a * a) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

const std::vector<double>& test8_control_heights() {
  // Drawn once from U(-0.5, 0.5) with seed 20240808.
  static const std::vector<double> v{
      0.322111,  -0.481099, -0.349200, -0.349003, -0.121556, 0.294318,  -0.204724, 0.468490,
      0.315465,  -0.318032, 0.100773,  -0.352736, 0.073198,  0.306474,  -0.169473, -0.472698,
      0.101254,  -0.018754, 0.373352,  -0.176392, 0.387539,  0.457656,  0.172329,  0.233575,
      -0.218489, 0.019184,  0.080435,  -0.148001, 0.101963,  0.229219,  0.233691,  -0.020313,
      -0.072982, -0.226885, -0.266710, 0.434993,  0.027646,  0.130633,  -0.468426, 0.169058,
  };
  return v;
}

// ---------------------------------------------------------------- registry

namespace {

constexpr double kGravity = 9.81;
constexpr double kGamma = 1.4;
constexpr double kSteadyThreshold = 1e-12;

State s1(double u) { return State{{u}}; }
State s2(double h, double q) { return State{{h, q}}; }

State euler_prim(double rho, double v, double p) {
  return State{{rho, rho * v, p / (kGamma - 1.0) + 0.5 * rho * v * v}};
}

Geometry bump_geometry() {
  return {[](double x) { return 1.0 - 0.5 * std::exp(-2.0 * x * x); },
          [](double x) { return 2.0 * x * std::exp(-2.0 * x * x); }};
}

Geometry linear_potential() {
  return {[](double x) { return x; }, [](double) { return 1.0; }};
}

Geometry spline_geometry() {
  const auto& hs = test8_control_heights();
  std::vector<double> xs(hs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -5.0 + 10.0 * static_cast<double>(i) / (xs.size() - 1);
  auto spline = std::make_shared<NaturalCubicSpline>(xs, hs);
  return {[spline](double x) { return (*spline)(x); }, [spline](double x) { return spline->derivative(x); }};
}

// Steady SWE height on a moving-water branch; the background functions below use the model evaluator.
std::function<State(double)> swe_background(Geometry geom, SteadyProfile p) {
  auto model = std::make_shared<SweModel>(kGravity, std::move(geom));
  return [model, p](double x) {
    const auto v = model->steady_eval(p, x);
    if (!v) throw NumericalError("harness: steady background undefined at x = " + std::to_string(x));
    return *v;
  };
}

double test10_energy() {
  const double hc = std::cbrt(1.0 / kGravity);
  return -bump_geometry().H(0.0) + 1.5 * hc;
}

SteadyProfile test10_profile() { return {SteadyKind::swe_transcritical, 1.0, test10_energy(), 0.0}; }

const std::vector<SchemeLabel> kExplicit{SchemeLabel::o1_exp, SchemeLabel::o2_exp, SchemeLabel::o3_exp};
const std::vector<SchemeLabel> kAll(kAllSchemes.begin(), kAllSchemes.end());
const std::vector<SchemeLabel> kStable{SchemeLabel::o1_imp, SchemeLabel::o2_imp, SchemeLabel::sl_o1};

std::vector<CaseDef> build_registry() {
  std::vector<CaseDef> r;

  {
    CaseDef c;
    c.id = c.group = "1";
    c.title = "Burgers, two Gaussian pulses steepening into shocks (explicit)";
    c.param = 0.15;
    c.a = -7.5, c.b = 7.5, c.nx = 200, c.cfl = 0.9, c.t_end = 2.5;
    c.initial = [](double x) { return s1(1.2 * std::exp(-(x + 3) * (x + 3)) - 1.2 * std::exp(-(x - 3) * (x - 3))); };
    c.schemes = kExplicit;
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = c.group = "2";
    c.title = "Burgers, clipped parabola approaching blow-up (implicit and SL)";
    c.param = 0.5;
    c.a = 0.0, c.b = 5.0, c.nx = 1000, c.cfl = 1.0, c.t_end = 1.9;
    c.initial = [](double x) { return s1(std::max(0.0, 1.0 - (x - 2) * (x - 2))); };
    c.schemes = kStable;
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = c.group = "3";
    c.title = "Burgers, rectangular pulse with implicit O1 at CFL 1 to 10";
    c.param = -0.5;
    c.a = -1.0, c.b = 4.0, c.nx = 4000, c.cfl = 1.0, c.t_end = 1.5;
    c.initial = [](double x) { return s1(x >= 0.0 && x <= 1.0 ? 1.0 : 0.1); };
    c.schemes = {SchemeLabel::o1_imp};
    c.reference_factor = 4;
    c.cfl_sweep = {1.0, 2.0, 5.0, 10.0};
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = "4A";
    c.group = "4";
    c.title = "Burgers, exact preservation of the exponential steady state";
    c.param = 1.0;
    c.a = -0.5, c.b = 0.5, c.nx = 200, c.cfl = 0.9, c.t_end = 1.0;
    c.initial = [](double x) { return s1(0.1 * std::exp(x)); };
    c.background = c.initial;
    c.schemes = kAll;
    c.threshold = kSteadyThreshold;
    r.push_back(c);

    CaseDef p = c;
    p.id = "4P";
    p.title = "Burgers, steep bump leaving an exponential steady state";
    p.a = -0.5, p.b = 1.0, p.t_end = 2.0;
    p.initial = [](double x) { return s1(std::exp(x) + 0.25 * std::exp(-1000.0 * (x - 0.8) * (x - 0.8))); };
    p.background = [](double x) { return s1(std::exp(x)); };
    p.relax_C = 10.0;
    r.push_back(p);

    CaseDef b = p;
    b.id = "4B";
    b.title = "Burgers, transient bump travelling over the steady state";
    b.t_end = 0.3;
    b.initial = [](double x) { return s1(std::exp(x) + 0.25 * std::exp(-1000.0 * x * x)); };
    b.threshold = -1.0;
    b.relax_C = 1.0;
    r.push_back(b);
  }
  {
    CaseDef c;
    c.id = c.group = "5";
    c.title = "SWE, smooth wave over a submerged bar (explicit)";
    c.model = ModelKind::swe;
    c.param = kGravity;
    c.geometry = {[](double x) {
                    if (x < 30.0 || x > 34.0) return 0.0;
                    const double t = std::cos(std::numbers::pi * (x - 32.0) / 4.0);
                    return -0.4 * t * t;
                  },
                  [](double x) {
                    if (x < 30.0 || x > 34.0) return 0.0;
                    return 0.1 * std::numbers::pi * std::sin(std::numbers::pi * (x - 32.0) / 2.0);
                  }};
    const auto H = c.geometry.H;
    c.a = 0.0, c.b = 50.0, c.nx = 1000, c.cfl = 0.8, c.t_end = 10.0;
    c.initial = [H](double x) { return s2(1.0 + 0.2 * std::exp(-(x - 5) * (x - 5)) + H(x), 0.0); };
    c.schemes = kExplicit;
    c.reference_factor = 8;
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = c.group = "6";
    c.title = "SWE, dam break over a Gaussian bump (explicit)";
    c.model = ModelKind::swe;
    c.param = kGravity;
    c.geometry = {[](double x) { return -0.5 * std::exp(-0.5 * (x - 12) * (x - 12)); },
                  [](double x) { return 0.5 * (x - 12) * std::exp(-0.5 * (x - 12) * (x - 12)); }};
    const auto H = c.geometry.H;
    c.a = 0.0, c.b = 20.0, c.nx = 200, c.cfl = 0.5, c.t_end = 1.0;
    c.initial = [H](double x) { return s2((x <= 10.0 ? 2.0 : 0.6) + H(x), 0.0); };
    c.schemes = kExplicit;
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = c.group = "7";
    c.title = "SWE, localized drop with SL O1 at CFL 1 to 10";
    c.model = ModelKind::swe;
    c.param = kGravity;
    c.geometry = {[](double x) { return -1.0 + 0.8 * std::exp(-(x - 10) * (x - 10)); },
                  [](double x) { return -1.6 * (x - 10) * std::exp(-(x - 10) * (x - 10)); }};
    const auto H = c.geometry.H;
    c.a = 0.0, c.b = 20.0, c.nx = 2000, c.cfl = 1.0, c.t_end = 2.0;
    c.initial = [H](double x) { return s2(2.0 - 0.5 * std::exp(-2.0 * (x - 10) * (x - 10)) + H(x), 0.0); };
    c.schemes = {SchemeLabel::sl_o1};
    c.reference_factor = 4;
    c.cfl_sweep = {1.0, 2.0, 5.0, 10.0};
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = c.group = "8";
    c.title = "SWE, lake at rest over a spline bathymetry";
    c.model = ModelKind::swe;
    c.param = kGravity;
    c.geometry = spline_geometry();
    const auto H = c.geometry.H;
    c.a = -5.0, c.b = 5.0, c.nx = 200, c.cfl = 0.9, c.t_end = 1.0;
    c.initial = [H](double x) { return s2(1.0 + H(x), 0.0); };
    c.background = c.initial;
    c.schemes = kAll;
    c.threshold = kSteadyThreshold;
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = "9A";
    c.group = "9";
    c.title = "SWE, perturbation over lake at rest and over subcritical flow";
    c.model = ModelKind::swe;
    c.param = kGravity;
    c.geometry = bump_geometry();
    const auto H = c.geometry.H;
    c.a = -5.0, c.b = 5.0, c.nx = 200, c.cfl = 0.9, c.t_end = 100.0;
    c.initial = [H](double x) { return s2(1.0 + 0.05 * std::exp(-x * x) + H(x), 0.0); };
    c.background = [H](double x) { return s2(1.0 + H(x), 0.0); };
    c.schemes = kAll;
    c.threshold = kSteadyThreshold;
    c.sponge = true;
    r.push_back(c);

    CaseDef b = c;
    b.id = "9B";
    b.background = swe_background(b.geometry, {SteadyKind::swe_subcritical, 1.0, 0.5, 0.0});
    const auto bg = b.background;
    b.initial = [bg](double x) {
      return s2(bg(x)[0] + 0.05 * std::exp(-(x + 2) * (x + 2) / (2.0 * 0.1 * 0.1)), 1.0);
    };
    r.push_back(b);
  }
  {
    CaseDef c;
    c.id = c.group = "10";
    c.title = "SWE, perturbation over a transcritical flow with central pinning";
    c.model = ModelKind::swe;
    c.param = kGravity;
    c.geometry = bump_geometry();
    c.a = -5.0, c.b = 5.0, c.nx = 201, c.cfl = 0.9, c.t_end = 60.0;
    c.background = swe_background(c.geometry, test10_profile());
    const auto bg = c.background;
    c.initial = [bg](double x) { return s2(bg(x)[0] + 0.05 * std::exp(-50.0 * (x + 2) * (x + 2)), 1.0); };
    c.schemes = kAll;
    c.threshold = kSteadyThreshold;
    c.pin_center = true;
    c.sponge = true;
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = c.group = "11";
    c.title = "SWE, smooth transient for empirical orders of accuracy";
    c.model = ModelKind::swe;
    c.param = kGravity;
    c.geometry = bump_geometry();
    c.a = -5.0, c.b = 5.0, c.nx = 800, c.cfl = 0.9, c.t_end = 0.3;
    c.initial = [](double x) { return s2(1.0 + std::exp(-x * x), 0.0); };
    c.schemes = kAll;
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = c.group = "12";
    c.title = "Euler, Mach 3 shock into a sinusoidal density field (explicit)";
    c.model = ModelKind::euler;
    c.param = kGamma;
    c.geometry = {[](double x) { return std::abs(x) < 2.0 ? 0.2 - 0.05 * x * x : 0.0; },
                  [](double x) { return std::abs(x) < 2.0 ? -0.1 * x : 0.0; }};
    c.a = -5.0, c.b = 5.0, c.nx = 500, c.cfl = 0.7, c.t_end = 1.8;
    c.initial = [](double x) {
      return x < -4.0 ? euler_prim(3.857143, 2.629369, 10.33333) : euler_prim(1.0 + 0.2 * std::sin(5.0 * x), 0.0, 1.0);
    };
    c.schemes = kExplicit;
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = c.group = "13";
    c.title = "Euler, pressure spike in a stratified atmosphere (implicit and SL)";
    c.model = ModelKind::euler;
    c.param = kGamma;
    c.geometry = linear_potential();
    c.a = 0.0, c.b = 1.0, c.nx = 2000, c.cfl = 1.0, c.t_end = 0.1;
    c.initial = [](double x) {
      const double rho = std::exp(-x);
      return euler_prim(rho, 0.0, rho + (std::abs(x - 0.5) <= 0.05 ? 10.0 : 0.0));
    };
    c.schemes = kStable;
    c.reference_factor = 8;
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = c.group = "14";
    c.title = "Euler, Sod tube under gravity with implicit O2 at CFL up to 10";
    c.model = ModelKind::euler;
    c.param = kGamma;
    c.geometry = linear_potential();
    c.a = 0.0, c.b = 1.0, c.nx = 5000, c.cfl = 1.0, c.t_end = 0.2;
    c.initial = [](double x) { return x < 0.5 ? euler_prim(1.0, 0.0, 1.0) : euler_prim(0.125, 0.0, 0.1); };
    c.schemes = {SchemeLabel::o2_imp};
    c.reference_factor = 4;
    c.cfl_sweep = {1.0, 2.0, 5.0, 10.0};
    c.limiter = SlopeLimiter::minmod;
    r.push_back(c);
  }
  {
    CaseDef c;
    c.id = "15A";
    c.group = "15";
    c.title = "Euler, isothermal hydrostatic state, exact and perturbed";
    c.model = ModelKind::euler;
    c.param = kGamma;
    c.geometry = linear_potential();
    c.a = -1.0, c.b = 1.0, c.nx = 50, c.cfl = 0.9, c.t_end = 1.0;
    c.initial = [](double x) {
      const double rho = std::exp(-x);
      return State{{rho, 0.0, (rho + 1.0) / (kGamma - 1.0)}};
    };
    c.background = c.initial;
    c.schemes = kAll;
    c.threshold = kSteadyThreshold;
    r.push_back(c);

    CaseDef b = c;
    b.id = "15B";
    b.t_end = 2000.0;
    b.initial = [](double x) {
      return State{{std::exp(-x) + 0.4 * std::exp(-200.0 * x * x), 0.0, std::exp(-x) / (kGamma - 1.0)}};
    };
    b.background = [](double x) { return State{{std::exp(-x), 0.0, std::exp(-x) / (kGamma - 1.0)}}; };
    b.slow = true;
    b.sponge = true;
    r.push_back(b);
  }
  {
    CaseDef c;
    c.id = c.group = "16";
    c.title = "Euler, Riemann problem joining two hydrostatic states (windowed error)";
    c.model = ModelKind::euler;
    c.param = kGamma;
    c.geometry = linear_potential();
    c.a = 0.0, c.b = 1.0, c.nx = 500, c.cfl = 0.9, c.t_end = 0.1;
    c.initial = [](double x) {
      const double rho = (x < 0.5 ? 1.0 : 0.125) * std::exp(-x);
      return State{{rho, 0.0, rho / (kGamma - 1.0)}};
    };
    c.background = c.initial;
    c.windows = {{0.0, 0.1}, {0.9, 1.0}};
    c.schemes = kAll;
    c.threshold = kSteadyThreshold;
    r.push_back(c);
  }
  return r;
}

}  // namespace

const std::vector<CaseDef>& case_registry() {
  static const std::vector<CaseDef> reg = build_registry();
  return reg;
}

const CaseDef& find_case(const std::string& id) {
  std::string key = id;
  for (auto& ch : key) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (const auto& c : case_registry())
    if (c.id == key) return c;
  for (const auto& c : case_registry())
    if (c.group == key) return c;
  std::string ids;
  for (const auto& c : case_registry()) ids += (ids.empty() ? "" : ", ") + c.id;
  throw ConfigError("unknown case '" + id + "' (known: " + ids + ")");
}

std::vector<std::pair<std::string, std::string>> case_groups() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& c : case_registry()) {
    if (!out.empty() && out.back().first == c.group) continue;
    std::string subs;
    for (const auto& d : case_registry())
      if (d.group == c.group && d.id != d.group) subs += (subs.empty() ? "" : "/") + d.id;
    out.emplace_back(c.group, subs.empty() ? c.title : c.title + " [" + subs + "]");
  }
  return out;
}

// ---------------------------------------------------------------- options

namespace {

double parse_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out))
    throw ConfigError("option " + key + ": '" + v + "' is not a real number");
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("option " + key + ": '" + v + "' is not an integer");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("option " + key + ": '" + v + "' is not a boolean");
}

}  // namespace

std::vector<std::string> option_keys() {
  return {"nx",          "cfl",          "tend",          "bc",          "relax.law",       "relax.C",
          "relax.c_tau", "lambda.safety", "lambda.min",   "sponge",      "sponge.width",    "sponge.strength",
          "muscl.limiter", "cweno.d0",    "cweno.d1",     "cweno.d2",      "cweno.eps",   "euler.fit",       "pin",  "pin.cells",
          "reference",   "reference.factor", "reference.nx", "reference.richardson"};
}

void RunOptions::set(const std::string& key, const std::string& value) {
  if (key == "nx") {
    nx = parse_int(key, value);
    if (*nx < 1) throw ConfigError("option nx must be positive");
  } else if (key == "cfl") {
    cfl = parse_real(key, value);
    if (!(*cfl > 0.0)) throw ConfigError("option cfl must be positive");
  } else if (key == "tend") {
    t_end = parse_real(key, value);
    if (*t_end < 0.0) throw ConfigError("option tend must be non-negative");
  } else if (key == "bc") {
    bc = parse_boundary_kind(value);
  } else if (key == "relax.law") {
    if (value == "linear") relax_law = RelaxLaw::omega_linear;
    else if (value == "tau") relax_law = RelaxLaw::omega_from_tau;
    else throw ConfigError("option relax.law must be 'linear' or 'tau'");
  } else if (key == "relax.C") {
    relax_C = parse_real(key, value);
    if (*relax_C < 0.0) throw ConfigError("option relax.C must be non-negative");
  } else if (key == "relax.c_tau") {
    relax_c_tau = parse_real(key, value);
    if (!(*relax_c_tau > 0.0)) throw ConfigError("option relax.c_tau must be positive");
  } else if (key == "lambda.safety") {
    lambda_safety = parse_real(key, value);
  } else if (key == "lambda.min") {
    lambda_min = parse_real(key, value);
  } else if (key == "sponge") {
    sponge = parse_bool(key, value);
  } else if (key == "sponge.width") {
    sponge_params.width = parse_int(key, value);
  } else if (key == "sponge.strength") {
    sponge_params.strength = parse_real(key, value);
  } else if (key == "muscl.limiter") {
    if (value == "minmod") limiter = SlopeLimiter::minmod;
    else if (value == "van_leer") limiter = SlopeLimiter::van_leer;
    else throw ConfigError("option muscl.limiter must be 'minmod' or 'van_leer'");
  } else if (key == "cweno.d0") {
    cweno.d0 = parse_real(key, value);
  } else if (key == "cweno.d1") {
    cweno.d1 = parse_real(key, value);
  } else if (key == "cweno.d2") {
    cweno.d2 = parse_real(key, value);
  } else if (key == "cweno.eps") {
    cweno.eps_factor = parse_real(key, value);
  } else if (key == "euler.fit") {
    if (value == "hydrostatic") euler_fit = EulerFitPolicy::hydrostatic;
    else if (value == "at_rest") euler_fit = EulerFitPolicy::at_rest_only;
    else throw ConfigError("option euler.fit must be 'hydrostatic' or 'at_rest'");
  } else if (key == "pin") {
    pin = parse_bool(key, value);
  } else if (key == "pin.cells") {
    pin_cells = parse_int(key, value);
    if (pin_cells != 1 && pin_cells != 3) throw ConfigError("option pin.cells must be 1 or 3");
  } else if (key == "reference") {
    compare_reference = parse_bool(key, value);
  } else if (key == "reference.factor") {
    reference_factor = parse_int(key, value);
    if (*reference_factor < 1) throw ConfigError("option reference.factor must be >= 1");
  } else if (key == "reference.nx") {
    reference_nx = parse_int(key, value);
    if (*reference_nx < 1) throw ConfigError("option reference.nx must be positive");
  } else if (key == "reference.richardson") {
    richardson = parse_bool(key, value);
  } else {
    std::string keys;
    for (const auto& k : option_keys()) keys += (keys.empty() ? "" : ", ") + k;
    throw ConfigError("unknown option '" + key + "' (known: " + keys + ")");
  }
}

std::shared_ptr<const Model> make_model(const CaseDef& c, const RunOptions& o) {
  switch (c.model) {
    case ModelKind::burgers: return std::make_shared<BurgersModel>(c.param);
    case ModelKind::swe: return std::make_shared<SweModel>(c.param, c.geometry);
    case ModelKind::euler: return std::make_shared<EulerModel>(c.param, c.geometry, o.euler_fit);
  }
  throw ConfigError("unknown model");
}

// ---------------------------------------------------------------- runs

namespace {

std::map<int, SteadyProfile> pinned_cells(const CaseDef& c, const RunOptions& o, int nx) {
  std::map<int, SteadyProfile> pins;
  if (!c.pin_center || !o.pin) return pins;
  const int mid = nx / 2;
  const int half = o.pin_cells / 2;
  for (int i = mid - half; i <= mid + half; ++i) pins[i] = test10_profile();
  return pins;
}

}  // namespace

RunResult run_case(const std::string& id, SchemeLabel scheme, const RunOptions& o) {
  const CaseDef& c = find_case(id);
  RunResult res;
  res.case_id = c.id;
  res.scheme = scheme;
  res.a = c.a;
  res.b = c.b;
  res.nx = o.nx.value_or(c.nx);
  res.cfl = o.cfl.value_or(c.cfl);
  res.t_end = o.t_end.value_or(c.t_end);
  if (c.pin_center && res.nx % 2 == 0)
    throw ConfigError("case " + c.id + " needs an odd number of cells so a cell center sits on the critical point");
  if (is_explicit(scheme) && res.cfl > 1.0)
    throw ConfigError("case " + c.id + ": explicit scheme " + std::string(label(scheme)) +
                      " requires cfl <= 1 (large CFL is reserved for implicit and SL schemes)");

  const Mesh1D mesh(c.a, c.b, res.nx);
  const auto model = make_model(c, o);
  const QuadratureRule quad = quadrature_for(scheme);
  const int m = model->m();
  res.names = model->component_names();
  res.x.resize(res.nx);
  for (int i = 0; i < res.nx; ++i) res.x[i] = mesh.center(i);

  std::vector<State> u0 = project(c.initial, mesh, m, quad).values();
  if (c.background) res.steady = project(c.background, mesh, m, quad).values();

  SolverConfig cfg;
  cfg.scheme = scheme;
  cfg.cfl = res.cfl;
  cfg.bc.kind = o.bc.value_or(c.bc);
  cfg.relax.law = o.relax_law.value_or(RelaxLaw::omega_linear);
  cfg.relax.C = o.relax_C.value_or(c.relax_C);
  if (o.relax_c_tau) cfg.relax.c_tau = *o.relax_c_tau;
  cfg.lambda_safety = o.lambda_safety;
  cfg.lambda_min = o.lambda_min;
  cfg.cweno = o.cweno;
  cfg.limiter = o.limiter.value_or(c.limiter);
  cfg.pinned = pinned_cells(c, o, res.nx);
  if (o.sponge.value_or(c.sponge)) {
    if (res.steady.empty()) throw ConfigError("case " + c.id + " has no steady background for a sponge layer");
    cfg.bc.sponge = o.sponge_params;
    cfg.bc.sponge.enabled = true;
    cfg.sponge_background = res.steady;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Solver solver(model, mesh, cfg, std::move(u0));
  solver.advance_to(res.t_end);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.steps = solver.steps();
  res.solution = solver.solution();

  if (!res.steady.empty()) {
    const CellField uf(mesh, m, res.solution), sf(mesh, m, res.steady);
    res.errors = c.windows.empty() ? l1_error(uf, sf) : l1_error_windowed(uf, sf, c.windows);
  }
  if (o.compare_reference) {
    const auto ref = reference_solution(c, o, res.nx);
    res.reference_errors = l1_error(CellField(mesh, m, res.solution), CellField(mesh, m, ref));
  }
  res.threshold = c.threshold;
  if (res.has_threshold())
    for (double e : res.errors) res.passed = res.passed && e <= res.threshold;
  return res;
}

// ---------------------------------------------------------------- references

std::vector<State> make_reference(const CaseDef& c, const RunOptions& o, int nx, int nx_ref) {
  const Mesh1D fine(c.a, c.b, nx_ref);
  const auto model = make_model(c, o);
  auto u0 = project(c.initial, fine, model->m(), QuadratureRule::midpoint()).values();
  LlfSolver llf(model, fine, 0.9, o.bc.value_or(c.bc), std::move(u0));
  llf.advance_to(o.t_end.value_or(c.t_end));
  return restrict_average(llf.solution(), nx);
}

namespace {

struct ReferenceCache {
  std::mutex mu;
  std::map<std::string, std::shared_future<std::vector<State>>> fine;
};

ReferenceCache& cache() {
  static ReferenceCache c;
  return c;
}

std::shared_future<std::vector<State>> fine_reference(const CaseDef& c, const RunOptions& o, int nx_ref) {
  const double t_end = o.t_end.value_or(c.t_end);
  const BoundaryKind bc = o.bc.value_or(c.bc);
  const std::string key = c.id + "|" + std::to_string(nx_ref) + "|" + format_double(t_end) + "|" +
                          std::string(to_string(bc)) + "|" + std::to_string(static_cast<int>(o.euler_fit));
  std::promise<std::vector<State>> promise;
  const auto fut = promise.get_future().share();
  {
    std::lock_guard lock(cache().mu);
    auto it = cache().fine.find(key);
    if (it != cache().fine.end()) return it->second;
    cache().fine.emplace(key, fut);
  }
  try {
    promise.set_value(make_reference(c, o, nx_ref, nx_ref));
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard lock(cache().mu);
    cache().fine.erase(key);
  }
  return fut;
}

}  // namespace

std::vector<State> reference_solution(const CaseDef& c, const RunOptions& o, int nx) {
  const int nx_ref = o.reference_nx.value_or(o.reference_factor.value_or(c.reference_factor) * nx);
  if (nx_ref % nx != 0)
    throw ConfigError("reference mesh " + std::to_string(nx_ref) + " is not a multiple of nx = " + std::to_string(nx));
  const auto coarse = restrict_average(fine_reference(c, o, nx_ref).get(), nx);
  if (!o.richardson.value_or(false)) return coarse;
  const auto finer = restrict_average(fine_reference(c, o, 2 * nx_ref).get(), nx);
  std::vector<State> out(nx);
  for (int i = 0; i < nx; ++i) out[i] = 2.0 * finer[i] - coarse[i];
  return out;
}

// ---------------------------------------------------------------- convergence

std::vector<int> default_convergence_meshes(SchemeLabel s) {
  if (s == SchemeLabel::o1_imp) return {50, 100, 200, 400, 800, 1600};
  return {50, 100, 200, 400, 800};
}

ConvergenceTable convergence_study(const std::string& id, SchemeLabel scheme, const std::vector<int>& nx_list,
                                   const RunOptions& o) {
  const CaseDef& c = find_case(id);
  RunOptions base = o;
  if (!base.reference_nx && !base.reference_factor) {
    base.reference_nx = kConvergenceReferenceNx;
    if (!base.richardson) base.richardson = true;
  }
  ConvergenceTable t;
  t.case_id = c.id;
  t.scheme = scheme;
  t.names = make_model(c, o)->component_names();

  std::vector<std::future<RunResult>> jobs;
  for (int nx : nx_list) {
    RunOptions oi = base;
    oi.nx = nx;
    oi.compare_reference = true;
    jobs.push_back(std::async(std::launch::async, [id, scheme, oi] { return run_case(id, scheme, oi); }));
  }
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const RunResult r = jobs[k].get();
    ConvergenceRow row;
    row.nx = r.nx;
    row.error = r.reference_errors;
    row.order.assign(row.error.size(), std::nan(""));
    if (!t.rows.empty() && t.rows.back().nx * 2 == row.nx) {
      const auto& prev = t.rows.back().error;
      for (std::size_t j = 0; j < row.error.size(); ++j) row.order[j] = std::log2(prev[j] / row.error[j]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

const std::vector<OrderTarget>& test11_order_targets() {
  static const std::vector<OrderTarget> targets{
      {SchemeLabel::o1_exp, 800, 1.039185}, {SchemeLabel::o2_exp, 800, 2.013209},
      {SchemeLabel::o3_exp, 800, 2.860462}, {SchemeLabel::o1_imp, 1600, 0.960990},
      {SchemeLabel::o2_imp, 800, 2.133040}, {SchemeLabel::sl_o1, 800, 0.945666},
  };
  return targets;
}

bool convergence_passed(const ConvergenceTable& t) {
  if (t.rows.empty()) return false;
  for (const auto& target : test11_order_targets()) {
    if (target.scheme != t.scheme) continue;
    const auto& last = t.rows.back();
    if (last.nx != target.nx || last.order.empty()) return false;
    return std::abs(last.order[0] - target.h_order) <= kOrderTolerance;
  }
  return false;
}

// ---------------------------------------------------------------- reports

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::out | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

void close_out(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace

void write_solution_csv(const RunResult& r, const std::string& path) {
  auto f = open_out(path);
  const int m = static_cast<int>(r.names.size());
  f << "x";
  for (const auto& n : r.names) f << ',' << n;
  if (!r.steady.empty())
    for (const auto& n : r.names) f << ",steady_" << n;
  f << '\n';
  for (std::size_t i = 0; i < r.solution.size(); ++i) {
    f << format_double(r.x[i]);
    for (int k = 0; k < m; ++k) f << ',' << format_double(r.solution[i][k]);
    if (!r.steady.empty())
      for (int k = 0; k < m; ++k) f << ',' << format_double(r.steady[i][k]);
    f << '\n';
  }
  close_out(f, path);
}

void write_summary_csv(const std::vector<RunResult>& results, const std::string& path) {
  auto f = open_out(path);
  f << "case,scheme,nx,component,l1_error,threshold,status\n";
  for (const auto& r : results) {
    const auto& errs = r.errors.empty() ? r.reference_errors : r.errors;
    for (std::size_t k = 0; k < r.names.size(); ++k) {
      f << r.case_id << ',' << label(r.scheme) << ',' << r.nx << ',' << r.names[k] << ',';
      f << (k < errs.size() ? format_double(errs[k]) : std::string("nan")) << ',';
      if (r.has_threshold()) {
        f << format_double(r.threshold) << ',' << (k < r.errors.size() && r.errors[k] <= r.threshold ? "PASS" : "FAIL");
      } else {
        f << ",-";
      }
      f << '\n';
    }
  }
  close_out(f, path);
}

void write_convergence_csv(const ConvergenceTable& t, const std::string& path) {
  auto f = open_out(path);
  f << "nx";
  for (const auto& n : t.names) f << ",err_" << n << ",ord_" << n;
  f << '\n';
  for (const auto& row : t.rows) {
    f << row.nx;
    for (std::size_t k = 0; k < row.error.size(); ++k) {
      f << ',' << format_double(row.error[k]) << ',';
      if (!std::isnan(row.order[k])) f << format_double(row.order[k]);
      else f << '-';
    }
    f << '\n';
  }
  close_out(f, path);
}

}  // namespace hkr
