#include "cli_args.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

namespace hkr::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_setting(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got '" + text + "'");
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

bool truthy(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config key '" + key + "' expects a boolean, got '" + v + "'");
}

// Keys that map onto RunConfig fields; everything else is forwarded to the library.
void apply_config_entry(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "case") c.case_id = value;
  else if (key == "scheme") c.scheme = value;
  else if (key == "nx") c.nx = std::stoi(value);
  else if (key == "cfl") c.cfl = std::stod(value);
  else if (key == "tend") c.t_end = std::stod(value);
  else if (key == "out") c.out_dir = value;
  else if (key == "all") c.run_all = truthy(key, value);
  else if (key == "convergence") c.convergence = truthy(key, value);
  else if (key == "slow") c.slow = truthy(key, value);
  else c.settings.emplace_back(key, value);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ParseResult usage_error(const std::string& msg, const std::string& help) {
  ParseResult r;
  r.exit_now = true;
  r.exit_code = 2;
  r.message = "error: " + msg + "\n" + help;
  return r;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    try {
      out.push_back(split_setting(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

ParseResult parse_args(const std::vector<std::string>& args, const std::vector<std::string>& valid_schemes) {
  CLI::App app{"Well-balanced kinetic relaxation benchmark runner", "hkr_cli"};

  std::string case_id, scheme, out_dir, config_path;
  int nx = 0;
  double cfl = 0.0, t_end = 0.0;
  std::vector<std::string> sets;
  bool run_all = false, convergence = false, slow = false, list = false;

  auto* o_case = app.add_option("--case", case_id, "Test id, e.g. 4A or 11 (a group id selects its first scenario)");
  auto* o_scheme = app.add_option("--scheme", scheme, "Scheme label (default: all schemes of the case)");
  auto* o_nx = app.add_option("--nx", nx, "Number of cells")->check(CLI::PositiveNumber);
  auto* o_cfl = app.add_option("--cfl", cfl, "CFL number")->check(CLI::PositiveNumber);
  auto* o_tend = app.add_option("--tend", t_end, "Final time")->check(CLI::NonNegativeNumber);
  auto* o_out = app.add_option("--out", out_dir, "Output directory (default: $HKR_OUT_DIR, then hkr_out)");
  auto* f_conv = app.add_flag("--convergence", convergence, "Run a mesh-refinement study against the reference");
  auto* f_all = app.add_flag("--all", run_all, "Run every registered case");
  auto* f_slow = app.add_flag("--slow", slow, "Allow long-time cases (15B)");
  app.add_flag("--list", list, "List test ids and exit");
  app.add_option("--set", sets, "Override a dotted key, e.g. --set relax.C=2")->allow_extra_args(false);
  app.add_option("--config", config_path, "Plain key=value file applied before flags");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    ParseResult r;
    r.exit_now = true;
    r.exit_code = app.exit(e, out, err);
    r.message = out.str() + err.str();
    if (r.exit_code != 0 && r.message.find("--help") == std::string::npos) r.message += app.help();
    return r;
  }

  ParseResult r;
  RunConfig& c = r.config;
  try {
    if (!config_path.empty())
      for (const auto& [k, v] : parse_config_text(read_file(config_path))) apply_config_entry(c, k, v);
    if (o_case->count()) c.case_id = case_id;
    if (o_scheme->count()) c.scheme = scheme;
    if (o_nx->count()) c.nx = nx;
    if (o_cfl->count()) c.cfl = cfl;
    if (o_tend->count()) c.t_end = t_end;
    if (o_out->count()) c.out_dir = out_dir;
    if (f_conv->count()) c.convergence = true;
    if (f_all->count()) c.run_all = true;
    if (f_slow->count()) c.slow = true;
    c.list = list;
    for (const auto& s : sets) c.settings.push_back(split_setting(s));
  } catch (const std::exception& e) {
    return usage_error(e.what(), app.help());
  }

  if (!c.scheme.empty() &&
      std::find(valid_schemes.begin(), valid_schemes.end(), c.scheme) == valid_schemes.end()) {
    std::string labels;
    for (const auto& l : valid_schemes) labels += "  " + l + "\n";
    return usage_error("unknown scheme '" + c.scheme + "'; valid labels are:\n" + labels, "");
  }
  if (!c.list && !c.run_all && !c.convergence && c.case_id.empty())
    return usage_error("one of --case, --all, --convergence or --list is required", app.help());
  if (c.run_all && !c.case_id.empty()) return usage_error("--all and --case are mutually exclusive", app.help());
  return r;
}

std::string resolve_out_dir(const RunConfig& c, const char* env_value) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (env_value && *env_value) return env_value;
  return "hkr_out";
}

}  // namespace hkr::cli
