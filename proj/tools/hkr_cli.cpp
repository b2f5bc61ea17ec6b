#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "cli_args.hpp"
#include "hkr/hkr.h"

namespace {

using OptionsPtr = std::unique_ptr<hkr_options, decltype(&hkr_options_free)>;
using RunPtr = std::unique_ptr<hkr_run, decltype(&hkr_run_free)>;

struct Job {
  std::string case_id;
  std::string scheme;
  RunPtr run{nullptr, hkr_run_free};
  hkr_status status = HKR_OK;
  std::string error;
};

std::vector<std::string> scheme_labels() {
  std::vector<std::string> out;
  for (int i = 0; i < hkr_scheme_count(); ++i) out.emplace_back(hkr_scheme_label(i));
  return out;
}

bool set_option(hkr_options* o, const std::string& key, const std::string& value) {
  if (hkr_options_set(o, key.c_str(), value.c_str()) == HKR_OK) return true;
  std::cerr << "error: " << hkr_last_error() << "\n";
  return false;
}

OptionsPtr build_options(const hkr::cli::RunConfig& c) {
  OptionsPtr o(hkr_options_new(), hkr_options_free);
  bool ok = o != nullptr;
  for (const auto& [k, v] : c.settings) ok = ok && set_option(o.get(), k, v);
  char buf[32];
  if (ok && c.nx) ok = set_option(o.get(), "nx", std::to_string(*c.nx));
  if (ok && c.cfl) {
    std::snprintf(buf, sizeof buf, "%.17g", *c.cfl);
    ok = set_option(o.get(), "cfl", buf);
  }
  if (ok && c.t_end) {
    std::snprintf(buf, sizeof buf, "%.17g", *c.t_end);
    ok = set_option(o.get(), "tend", buf);
  }
  if (!ok) o.reset();
  return o;
}

std::vector<std::string> case_schemes(const std::string& id, const std::string& only) {
  if (!only.empty()) return {only};
  std::vector<std::string> out;
  for (int i = 0;; ++i) {
    const char* s = hkr_case_scheme(id.c_str(), i);
    if (!s) break;
    out.emplace_back(s);
  }
  return out;
}

bool is_slow(const std::string& id) {
  hkr_case_info info{};
  return hkr_case_lookup(id.c_str(), &info) == HKR_OK && info.slow;
}

void run_jobs(std::vector<Job>& jobs, const hkr_options* opts) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      Job& j = jobs[k];
      hkr_run* r = nullptr;
      j.status = hkr_run_case(j.case_id.c_str(), j.scheme.c_str(), opts, &r);
      if (j.status == HKR_OK) j.run.reset(r);
      else j.error = hkr_last_error();
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

void print_run(const Job& j) {
  const hkr_run* r = j.run.get();
  std::printf("%-4s %-14s nx=%-6d cfl=%-5g steps=%-8ld %7.2fs", j.case_id.c_str(), j.scheme.c_str(), hkr_run_nx(r),
              hkr_run_cfl(r), hkr_run_steps(r), hkr_run_seconds(r));
  for (int k = 0; k < hkr_run_components(r); ++k) {
    const double e = hkr_run_error(r, k);
    if (!std::isnan(e)) std::printf("  L1(%s)=%.3e", hkr_run_component_name(r, k), e);
    const double re = hkr_run_reference_error(r, k);
    if (!std::isnan(re)) std::printf("  ref(%s)=%.3e", hkr_run_component_name(r, k), re);
  }
  if (hkr_run_has_threshold(r))
    std::printf("  [%s <= %.0e]", hkr_run_passed(r) ? "PASS" : "FAIL", hkr_run_threshold(r));
  std::printf("\n");
}

int run_convergence(const hkr::cli::RunConfig& c, const hkr_options* opts, const std::filesystem::path& out) {
  const std::string requested = c.case_id.empty() ? "11" : c.case_id;
  const char* resolved = hkr_case_resolve(requested.c_str());
  if (!resolved) {
    std::cerr << "error: " << hkr_last_error() << "\n";
    return 2;
  }
  const std::string id = resolved;
  bool ok = true;
  std::vector<int> meshes;
  if (c.nx) {
    for (int n = std::max(1, *c.nx / 16); n <= *c.nx; n *= 2) meshes.push_back(n);
  }
  for (const auto& scheme : case_schemes(id, c.scheme)) {
    hkr_convergence* t = nullptr;
    const hkr_status st = hkr_convergence_run(id.c_str(), scheme.c_str(), meshes.empty() ? nullptr : meshes.data(),
                                              static_cast<int>(meshes.size()), opts, &t);
    if (st != HKR_OK) {
      std::cerr << "error: " << id << " " << scheme << ": " << hkr_last_error() << "\n";
      ok = false;
      continue;
    }
    std::unique_ptr<hkr_convergence, decltype(&hkr_convergence_free)> table(t, hkr_convergence_free);
    std::printf("%s %s\n", id.c_str(), scheme.c_str());
    for (int row = 0; row < hkr_convergence_rows(t); ++row) {
      std::printf("  nx=%-6d", hkr_convergence_nx(t, row));
      for (int k = 0; k < hkr_convergence_components(t); ++k)
        std::printf("  err=%.6e ord=%6.3f", hkr_convergence_error(t, row, k), hkr_convergence_order(t, row, k));
      std::printf("\n");
    }
    if (id == "11") {
      const bool pass = hkr_convergence_passed(t);
      std::printf("  final h-order %s\n", pass ? "PASS" : "FAIL");
      ok = ok && pass;
    }
    const auto path = out / ("convergence_" + id + "_" + scheme + ".csv");
    if (hkr_convergence_write_csv(t, path.string().c_str()) != HKR_OK) {
      std::cerr << "error: " << hkr_last_error() << "\n";
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  const auto parsed = hkr::cli::parse_args(std::vector<std::string>(argv + 1, argv + argc), scheme_labels());
  if (parsed.exit_now) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }
  const auto& cfg = parsed.config;

  if (cfg.list) {
    for (int i = 0; i < hkr_case_group_count(); ++i)
      std::printf("%-3s %s\n", hkr_case_group_id(i), hkr_case_group_description(i));
    return 0;
  }

  const OptionsPtr opts = build_options(cfg);
  if (!opts) return 2;

  const std::filesystem::path out = hkr::cli::resolve_out_dir(cfg, std::getenv("HKR_OUT_DIR"));
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << out << ": " << ec.message() << "\n";
    return 2;
  }

  if (cfg.convergence) return run_convergence(cfg, opts.get(), out);

  std::vector<Job> jobs;
  auto add_case = [&](const std::string& id) {
    for (const auto& s : case_schemes(id, cfg.scheme)) jobs.push_back(Job{id, s});
  };
  if (cfg.run_all) {
    for (int i = 0; i < hkr_case_count(); ++i) {
      const std::string id = hkr_case_id(i);
      if (is_slow(id) && !cfg.slow) {
        std::printf("skipping %s (long-time run; pass --slow)\n", id.c_str());
        continue;
      }
      add_case(id);
    }
  } else {
    const char* resolved = hkr_case_resolve(cfg.case_id.c_str());
    if (!resolved) {
      std::cerr << "error: " << hkr_last_error() << "\n";
      return 2;
    }
    if (is_slow(resolved) && !cfg.slow) {
      std::cerr << "error: case " << resolved << " is a long-time run; pass --slow to run it\n";
      return 2;
    }
    add_case(resolved);
  }

  run_jobs(jobs, opts.get());

  std::unique_ptr<hkr_summary, decltype(&hkr_summary_free)> summary(hkr_summary_new(), hkr_summary_free);
  bool ok = true;
  for (const auto& j : jobs) {
    if (j.status != HKR_OK) {
      std::fprintf(stderr, "error: %s %s: %s: %s\n", j.case_id.c_str(), j.scheme.c_str(), hkr_status_name(j.status),
                   j.error.c_str());
      ok = false;
      continue;
    }
    print_run(j);
    hkr_summary_add(summary.get(), j.run.get());
    const auto path = out / (j.case_id + "_" + j.scheme + ".csv");
    if (hkr_run_write_csv(j.run.get(), path.string().c_str()) != HKR_OK) {
      std::cerr << "error: " << hkr_last_error() << "\n";
      ok = false;
    }
  }
  if (hkr_summary_size(summary.get()) > 0) {
    const auto path = out / "summary.csv";
    if (hkr_summary_write_csv(summary.get(), path.string().c_str()) != HKR_OK) {
      std::cerr << "error: " << hkr_last_error() << "\n";
      ok = false;
    }
    ok = ok && hkr_summary_passed(summary.get());
  }
  return ok ? 0 : 1;
}
