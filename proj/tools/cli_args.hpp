#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hkr::cli {

struct RunConfig {
  std::string case_id;
  std::string scheme;  // empty: every scheme the case lists
  std::optional<int> nx;
  std::optional<double> cfl;
  std::optional<double> t_end;
  std::string out_dir;  // empty: HKR_OUT_DIR, then "hkr_out"
  bool run_all = false;
  bool convergence = false;
  bool slow = false;
  bool list = false;
  // Dotted keys forwarded to the library, in application order (config file first, then --set).
  std::vector<std::pair<std::string, std::string>> settings;
};

struct ParseResult {
  RunConfig config;
  bool exit_now = false;  // help or usage error; print message and exit with exit_code
  int exit_code = 0;
  std::string message;
};

// args excludes the program name. valid_schemes is used to validate --scheme.
ParseResult parse_args(const std::vector<std::string>& args, const std::vector<std::string>& valid_schemes);

// Parses "key=value" lines; blank lines and lines starting with '#' are ignored.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);

std::string resolve_out_dir(const RunConfig& c, const char* env_value);

}  // namespace hkr::cli
