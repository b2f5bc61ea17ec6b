#include "hkr/hkr.h"

#include <cmath>
#include <exception>
#include <string>
#include <vector>

#include "hkr/harness.hpp"

struct hkr_options {
  hkr::RunOptions o;
};

struct hkr_run {
  hkr::RunResult r;
  std::string scheme;
};

struct hkr_summary {
  std::vector<hkr::RunResult> runs;
};

struct hkr_convergence {
  hkr::ConvergenceTable t;
};

namespace {

thread_local std::string g_last_error;

hkr_status fail(hkr_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

hkr_status status_of(hkr::ErrorKind k) {
  switch (k) {
    case hkr::ErrorKind::config: return HKR_ERR_CONFIG;
    case hkr::ErrorKind::positivity: return HKR_ERR_POSITIVITY;
    case hkr::ErrorKind::numerical: return HKR_ERR_NUMERICAL;
    case hkr::ErrorKind::boundary: return HKR_ERR_BOUNDARY;
    case hkr::ErrorKind::io: return HKR_ERR_IO;
  }
  return HKR_ERR_INTERNAL;
}

template <class F>
hkr_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return HKR_OK;
  } catch (const hkr::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail(HKR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HKR_ERR_INTERNAL, "unknown error");
  }
}

hkr::SchemeLabel scheme_or_throw(const char* text) {
  if (!text) throw hkr::ConfigError("scheme label is null");
  const auto s = hkr::parse_scheme(text);
  if (!s) throw hkr::ConfigError("unknown scheme '" + std::string(text) + "' (valid: " + hkr::scheme_list() + ")");
  return *s;
}

const hkr::CaseDef* case_or_null(const char* id) {
  if (!id) return nullptr;
  try {
    return &hkr::find_case(id);
  } catch (const hkr::Error& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

double nan() { return std::nan(""); }

}  // namespace

extern "C" {

const char* hkr_last_error(void) { return g_last_error.c_str(); }

const char* hkr_status_name(hkr_status s) {
  switch (s) {
    case HKR_OK: return "ok";
    case HKR_ERR_CONFIG: return "configuration error";
    case HKR_ERR_POSITIVITY: return "positivity error";
    case HKR_ERR_NUMERICAL: return "numerical error";
    case HKR_ERR_BOUNDARY: return "boundary error";
    case HKR_ERR_IO: return "i/o error";
    case HKR_ERR_ARGUMENT: return "invalid argument";
    case HKR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int hkr_scheme_count(void) { return static_cast<int>(hkr::kAllSchemes.size()); }

const char* hkr_scheme_label(int index) {
  if (index < 0 || index >= hkr_scheme_count()) return nullptr;
  return hkr::label(hkr::kAllSchemes[static_cast<std::size_t>(index)]).data();
}

const char* hkr_scheme_list(void) {
  static const std::string list = hkr::scheme_list();
  return list.c_str();
}

int hkr_scheme_is_explicit(const char* label) {
  if (!label) return -1;
  const auto s = hkr::parse_scheme(label);
  return s ? (hkr::is_explicit(*s) ? 1 : 0) : -1;
}

int hkr_case_count(void) { return static_cast<int>(hkr::case_registry().size()); }

const char* hkr_case_id(int index) {
  if (index < 0 || index >= hkr_case_count()) return nullptr;
  return hkr::case_registry()[static_cast<std::size_t>(index)].id.c_str();
}

const char* hkr_case_title(int index) {
  if (index < 0 || index >= hkr_case_count()) return nullptr;
  return hkr::case_registry()[static_cast<std::size_t>(index)].title.c_str();
}

namespace {
const std::vector<std::pair<std::string, std::string>>& groups() {
  static const auto g = hkr::case_groups();
  return g;
}
}  // namespace

int hkr_case_group_count(void) { return static_cast<int>(groups().size()); }

const char* hkr_case_group_id(int index) {
  if (index < 0 || index >= hkr_case_group_count()) return nullptr;
  return groups()[static_cast<std::size_t>(index)].first.c_str();
}

const char* hkr_case_group_description(int index) {
  if (index < 0 || index >= hkr_case_group_count()) return nullptr;
  return groups()[static_cast<std::size_t>(index)].second.c_str();
}

hkr_status hkr_case_lookup(const char* id, hkr_case_info* out) {
  if (!id || !out) return fail(HKR_ERR_ARGUMENT, "hkr_case_lookup: null argument");
  return guarded([&] {
    const auto& c = hkr::find_case(id);
    out->nx = c.nx;
    out->cfl = c.cfl;
    out->t_end = c.t_end;
    out->a = c.a;
    out->b = c.b;
    out->threshold = c.threshold;
    out->slow = c.slow ? 1 : 0;
    out->has_background = c.background ? 1 : 0;
    out->scheme_count = static_cast<int>(c.schemes.size());
    out->cfl_sweep_count = static_cast<int>(c.cfl_sweep.size());
  });
}

const char* hkr_case_resolve(const char* id) {
  const auto* c = case_or_null(id);
  return c ? c->id.c_str() : nullptr;
}

const char* hkr_case_scheme(const char* id, int index) {
  const auto* c = case_or_null(id);
  if (!c || index < 0 || index >= static_cast<int>(c->schemes.size())) return nullptr;
  return hkr::label(c->schemes[static_cast<std::size_t>(index)]).data();
}

double hkr_case_cfl_sweep(const char* id, int index) {
  const auto* c = case_or_null(id);
  if (!c || index < 0 || index >= static_cast<int>(c->cfl_sweep.size())) return nan();
  return c->cfl_sweep[static_cast<std::size_t>(index)];
}

hkr_options* hkr_options_new(void) { return new (std::nothrow) hkr_options{}; }

hkr_options* hkr_options_clone(const hkr_options* o) {
  if (!o) return hkr_options_new();
  return new (std::nothrow) hkr_options{*o};
}

void hkr_options_free(hkr_options* o) { delete o; }

hkr_status hkr_options_set(hkr_options* o, const char* key, const char* value) {
  if (!o || !key || !value) return fail(HKR_ERR_ARGUMENT, "hkr_options_set: null argument");
  return guarded([&] { o->o.set(key, value); });
}

const char* hkr_option_keys(void) {
  static const std::string keys = [] {
    std::string s;
    for (const auto& k : hkr::option_keys()) s += k + "\n";
    return s;
  }();
  return keys.c_str();
}

hkr_status hkr_run_case(const char* case_id, const char* scheme, const hkr_options* opts, hkr_run** out) {
  if (!case_id || !scheme || !out) return fail(HKR_ERR_ARGUMENT, "hkr_run_case: null argument");
  *out = nullptr;
  return guarded([&] {
    const auto s = scheme_or_throw(scheme);
    auto* r = new hkr_run{hkr::run_case(case_id, s, opts ? opts->o : hkr::RunOptions{}), std::string(hkr::label(s))};
    *out = r;
  });
}

void hkr_run_free(hkr_run* r) { delete r; }

const char* hkr_run_case_id(const hkr_run* r) { return r ? r->r.case_id.c_str() : nullptr; }
const char* hkr_run_scheme(const hkr_run* r) { return r ? r->scheme.c_str() : nullptr; }
int hkr_run_nx(const hkr_run* r) { return r ? r->r.nx : 0; }
int hkr_run_components(const hkr_run* r) { return r ? static_cast<int>(r->r.names.size()) : 0; }

const char* hkr_run_component_name(const hkr_run* r, int k) {
  if (!r || k < 0 || k >= hkr_run_components(r)) return nullptr;
  return r->r.names[static_cast<std::size_t>(k)].c_str();
}

double hkr_run_cfl(const hkr_run* r) { return r ? r->r.cfl : nan(); }
double hkr_run_t_end(const hkr_run* r) { return r ? r->r.t_end : nan(); }
long hkr_run_steps(const hkr_run* r) { return r ? r->r.steps : 0; }
double hkr_run_seconds(const hkr_run* r) { return r ? r->r.seconds : nan(); }

hkr_status hkr_run_x(const hkr_run* r, double* out, int n) {
  if (!r || !out) return fail(HKR_ERR_ARGUMENT, "hkr_run_x: null argument");
  if (n != r->r.nx) return fail(HKR_ERR_ARGUMENT, "hkr_run_x: buffer length must equal nx");
  for (int i = 0; i < n; ++i) out[i] = r->r.x[static_cast<std::size_t>(i)];
  return HKR_OK;
}

hkr_status hkr_run_values(const hkr_run* r, int k, double* out, int n) {
  if (!r || !out) return fail(HKR_ERR_ARGUMENT, "hkr_run_values: null argument");
  if (k < 0 || k >= hkr_run_components(r)) return fail(HKR_ERR_ARGUMENT, "hkr_run_values: component out of range");
  if (n != r->r.nx) return fail(HKR_ERR_ARGUMENT, "hkr_run_values: buffer length must equal nx");
  for (int i = 0; i < n; ++i) out[i] = r->r.solution[static_cast<std::size_t>(i)][k];
  return HKR_OK;
}

double hkr_run_error(const hkr_run* r, int k) {
  if (!r || k < 0 || k >= static_cast<int>(r->r.errors.size())) return nan();
  return r->r.errors[static_cast<std::size_t>(k)];
}

double hkr_run_reference_error(const hkr_run* r, int k) {
  if (!r || k < 0 || k >= static_cast<int>(r->r.reference_errors.size())) return nan();
  return r->r.reference_errors[static_cast<std::size_t>(k)];
}

int hkr_run_has_threshold(const hkr_run* r) { return r && r->r.has_threshold() ? 1 : 0; }
double hkr_run_threshold(const hkr_run* r) { return r ? r->r.threshold : nan(); }
int hkr_run_passed(const hkr_run* r) { return r && r->r.passed ? 1 : 0; }

hkr_status hkr_run_write_csv(const hkr_run* r, const char* path) {
  if (!r || !path) return fail(HKR_ERR_ARGUMENT, "hkr_run_write_csv: null argument");
  return guarded([&] { hkr::write_solution_csv(r->r, path); });
}

hkr_summary* hkr_summary_new(void) { return new (std::nothrow) hkr_summary{}; }
void hkr_summary_free(hkr_summary* s) { delete s; }

hkr_status hkr_summary_add(hkr_summary* s, const hkr_run* r) {
  if (!s || !r) return fail(HKR_ERR_ARGUMENT, "hkr_summary_add: null argument");
  return guarded([&] { s->runs.push_back(r->r); });
}

int hkr_summary_size(const hkr_summary* s) { return s ? static_cast<int>(s->runs.size()) : 0; }

int hkr_summary_passed(const hkr_summary* s) {
  if (!s) return 0;
  for (const auto& r : s->runs)
    if (!r.passed) return 0;
  return 1;
}

hkr_status hkr_summary_write_csv(const hkr_summary* s, const char* path) {
  if (!s || !path) return fail(HKR_ERR_ARGUMENT, "hkr_summary_write_csv: null argument");
  return guarded([&] { hkr::write_summary_csv(s->runs, path); });
}

hkr_status hkr_convergence_run(const char* case_id, const char* scheme, const int* nx_list, int count,
                               const hkr_options* opts, hkr_convergence** out) {
  if (!case_id || !scheme || !out) return fail(HKR_ERR_ARGUMENT, "hkr_convergence_run: null argument");
  if (nx_list && count <= 0) return fail(HKR_ERR_ARGUMENT, "hkr_convergence_run: empty mesh list");
  *out = nullptr;
  return guarded([&] {
    const auto s = scheme_or_throw(scheme);
    const std::vector<int> meshes =
        nx_list ? std::vector<int>(nx_list, nx_list + count) : hkr::default_convergence_meshes(s);
    *out = new hkr_convergence{hkr::convergence_study(case_id, s, meshes, opts ? opts->o : hkr::RunOptions{})};
  });
}

void hkr_convergence_free(hkr_convergence* c) { delete c; }
int hkr_convergence_rows(const hkr_convergence* c) { return c ? static_cast<int>(c->t.rows.size()) : 0; }
int hkr_convergence_components(const hkr_convergence* c) { return c ? static_cast<int>(c->t.names.size()) : 0; }

int hkr_convergence_nx(const hkr_convergence* c, int row) {
  if (!c || row < 0 || row >= hkr_convergence_rows(c)) return 0;
  return c->t.rows[static_cast<std::size_t>(row)].nx;
}

double hkr_convergence_error(const hkr_convergence* c, int row, int k) {
  if (!c || row < 0 || row >= hkr_convergence_rows(c)) return nan();
  const auto& e = c->t.rows[static_cast<std::size_t>(row)].error;
  return k >= 0 && k < static_cast<int>(e.size()) ? e[static_cast<std::size_t>(k)] : nan();
}

double hkr_convergence_order(const hkr_convergence* c, int row, int k) {
  if (!c || row < 0 || row >= hkr_convergence_rows(c)) return nan();
  const auto& o = c->t.rows[static_cast<std::size_t>(row)].order;
  return k >= 0 && k < static_cast<int>(o.size()) ? o[static_cast<std::size_t>(k)] : nan();
}

int hkr_convergence_passed(const hkr_convergence* c) { return c && hkr::convergence_passed(c->t) ? 1 : 0; }

hkr_status hkr_convergence_write_csv(const hkr_convergence* c, const char* path) {
  if (!c || !path) return fail(HKR_ERR_ARGUMENT, "hkr_convergence_write_csv: null argument");
  return guarded([&] { hkr::write_convergence_csv(c->t, path); });
}

}  // extern "C"
