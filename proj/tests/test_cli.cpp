#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "cli_args.hpp"

using namespace hkr::cli;

namespace {

const std::vector<std::string> kSchemes{"FV-HKR-O1-Exp", "FV-HKR-O2-Exp", "FV-HKR-O3-Exp",
                                        "FV-HKR-O1-Imp", "FV-HKR-O2-Imp", "SL-HKR-O1"};

ParseResult parse(std::vector<std::string> args) { return parse_args(args, kSchemes); }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = (std::filesystem::temp_directory_path() / ("hkr_cli_" + name)).string();
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("basic flags") {
  const auto r = parse({"--case", "4A", "--scheme", "FV-HKR-O2-Exp", "--nx", "400", "--cfl", "0.5", "--tend", "0.1",
                        "--out", "results"});
  REQUIRE_FALSE(r.exit_now);
  CHECK(r.config.case_id == "4A");
  CHECK(r.config.scheme == "FV-HKR-O2-Exp");
  CHECK(r.config.nx == 400);
  CHECK(r.config.cfl == 0.5);
  CHECK(r.config.t_end == 0.1);
  CHECK(r.config.out_dir == "results");
  CHECK_FALSE(r.config.run_all);
  CHECK_FALSE(r.config.slow);
}

TEST_CASE("optional values stay unset") {
  const auto r = parse({"--case", "8"});
  REQUIRE_FALSE(r.exit_now);
  CHECK_FALSE(r.config.nx.has_value());
  CHECK_FALSE(r.config.cfl.has_value());
  CHECK_FALSE(r.config.t_end.has_value());
  CHECK(r.config.scheme.empty());
}

TEST_CASE("mode flags") {
  CHECK(parse({"--all", "--slow"}).config.run_all);
  CHECK(parse({"--all", "--slow"}).config.slow);
  CHECK(parse({"--convergence"}).config.convergence);
  CHECK(parse({"--list"}).config.list);
}

TEST_CASE("usage errors") {
  auto r = parse({});
  CHECK(r.exit_now);
  CHECK(r.exit_code == 2);
  CHECK(r.message.find("--case") != std::string::npos);

  r = parse({"--case", "4", "--scheme", "SL"});
  CHECK(r.exit_now);
  CHECK(r.exit_code == 2);
  for (const auto& s : kSchemes) CHECK(r.message.find(s) != std::string::npos);

  r = parse({"--all", "--case", "4"});
  CHECK(r.exit_code == 2);
  CHECK(r.message.find("mutually exclusive") != std::string::npos);

  r = parse({"--case", "4", "--set", "relax.C"});
  CHECK(r.exit_code == 2);

  r = parse({"--case", "4", "--nx", "-3"});
  CHECK(r.exit_now);
  CHECK(r.exit_code != 0);

  r = parse({"--bogus"});
  CHECK(r.exit_now);
  CHECK(r.exit_code != 0);

  r = parse({"--help"});
  CHECK(r.exit_now);
  CHECK(r.exit_code == 0);
  CHECK(r.message.find("--scheme") != std::string::npos);
}

TEST_CASE("settings keep their order") {
  const auto r = parse({"--case", "9A", "--set", "relax.C=2", "--set", "sponge = off"});
  REQUIRE_FALSE(r.exit_now);
  REQUIRE(r.config.settings.size() == 2);
  CHECK(r.config.settings[0] == std::pair<std::string, std::string>{"relax.C", "2"});
  CHECK(r.config.settings[1] == std::pair<std::string, std::string>{"sponge", "off"});
}

TEST_CASE("config text") {
  const auto kv = parse_config_text("# comment\n\n  nx = 50 \nrelax.C=3\r\n");
  REQUIRE(kv.size() == 2);
  CHECK(kv[0].first == "nx");
  CHECK(kv[0].second == "50");
  CHECK(kv[1].second == "3");
  CHECK_THROWS(parse_config_text("nx 50\n"));
  CHECK_THROWS(parse_config_text("=5\n"));
}

TEST_CASE("config file applies before flags") {
  const auto path = write_temp("run.cfg", "case = 9B\nscheme = FV-HKR-O1-Imp\nnx = 100\nslow = yes\nrelax.C = 4\n");
  auto r = parse({"--config", path, "--nx", "300", "--set", "relax.C=5"});
  REQUIRE_FALSE(r.exit_now);
  CHECK(r.config.case_id == "9B");
  CHECK(r.config.scheme == "FV-HKR-O1-Imp");
  CHECK(r.config.nx == 300);
  CHECK(r.config.slow);
  REQUIRE(r.config.settings.size() == 2);
  CHECK(r.config.settings[0].second == "4");
  CHECK(r.config.settings[1].second == "5");
  std::filesystem::remove(path);

  const auto bad = write_temp("bad.cfg", "all = perhaps\n");
  r = parse({"--config", bad});
  CHECK(r.exit_code == 2);
  std::filesystem::remove(bad);

  r = parse({"--config", "/nonexistent/file.cfg"});
  CHECK(r.exit_now);
  CHECK(r.exit_code != 0);
}

TEST_CASE("output directory resolution") {
  RunConfig c;
  CHECK(resolve_out_dir(c, nullptr) == "hkr_out");
  CHECK(resolve_out_dir(c, "") == "hkr_out");
  CHECK(resolve_out_dir(c, "/tmp/env") == "/tmp/env");
  c.out_dir = "flag";
  CHECK(resolve_out_dir(c, "/tmp/env") == "flag");
}
