/* C interface to the HKR solver library. */
#ifndef HKR_H
#define HKR_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#  ifdef HKR_BUILDING
#    define HKR_API __declspec(dllexport)
#  else
#    define HKR_API __declspec(dllimport)
#  endif
#else
#  define HKR_API __attribute__((visibility("default")))
#endif

typedef enum hkr_status {
  HKR_OK = 0,
  HKR_ERR_CONFIG = 1,
  HKR_ERR_POSITIVITY = 2,
  HKR_ERR_NUMERICAL = 3,
  HKR_ERR_BOUNDARY = 4,
  HKR_ERR_IO = 5,
  HKR_ERR_ARGUMENT = 6,
  HKR_ERR_INTERNAL = 7
} hkr_status;

typedef struct hkr_options hkr_options;
typedef struct hkr_run hkr_run;
typedef struct hkr_summary hkr_summary;
typedef struct hkr_convergence hkr_convergence;

/* Message of the last failing call on this thread ("" if none). */
HKR_API const char* hkr_last_error(void);
HKR_API const char* hkr_status_name(hkr_status s);

/* Schemes. */
HKR_API int hkr_scheme_count(void);
HKR_API const char* hkr_scheme_label(int index);
/* Comma-separated list of all labels. */
HKR_API const char* hkr_scheme_list(void);
HKR_API int hkr_scheme_is_explicit(const char* label);

/* Registered scenarios (e.g. "4A", "15B"). */
HKR_API int hkr_case_count(void);
HKR_API const char* hkr_case_id(int index);
HKR_API const char* hkr_case_title(int index);
/* Test groups "1".."16" with one-line descriptions. */
HKR_API int hkr_case_group_count(void);
HKR_API const char* hkr_case_group_id(int index);
HKR_API const char* hkr_case_group_description(int index);

typedef struct hkr_case_info {
  int nx;
  double cfl;
  double t_end;
  double a, b;
  double threshold; /* negative when the case has no acceptance threshold */
  int slow;
  int has_background;
  int scheme_count;
  int cfl_sweep_count;
} hkr_case_info;

/* Resolves group ids ("4") to their first scenario. */
HKR_API hkr_status hkr_case_lookup(const char* id, hkr_case_info* out);
HKR_API const char* hkr_case_resolve(const char* id);
HKR_API const char* hkr_case_scheme(const char* id, int index);
HKR_API double hkr_case_cfl_sweep(const char* id, int index);

/* Run options: dotted keys such as "nx", "cfl", "tend", "bc", "relax.C", "sponge". */
HKR_API hkr_options* hkr_options_new(void);
HKR_API hkr_options* hkr_options_clone(const hkr_options* o);
HKR_API void hkr_options_free(hkr_options* o);
HKR_API hkr_status hkr_options_set(hkr_options* o, const char* key, const char* value);
/* Newline-separated list of accepted keys. */
HKR_API const char* hkr_option_keys(void);

/* Single runs. opts may be NULL. */
HKR_API hkr_status hkr_run_case(const char* case_id, const char* scheme, const hkr_options* opts, hkr_run** out);
HKR_API void hkr_run_free(hkr_run* r);
HKR_API const char* hkr_run_case_id(const hkr_run* r);
HKR_API const char* hkr_run_scheme(const hkr_run* r);
HKR_API int hkr_run_nx(const hkr_run* r);
HKR_API int hkr_run_components(const hkr_run* r);
HKR_API const char* hkr_run_component_name(const hkr_run* r, int k);
HKR_API double hkr_run_cfl(const hkr_run* r);
HKR_API double hkr_run_t_end(const hkr_run* r);
HKR_API long hkr_run_steps(const hkr_run* r);
HKR_API double hkr_run_seconds(const hkr_run* r);
/* Copies n = nx values of cell centers or of component k into out. */
HKR_API hkr_status hkr_run_x(const hkr_run* r, double* out, int n);
HKR_API hkr_status hkr_run_values(const hkr_run* r, int k, double* out, int n);
/* L1 error of component k against the steady background (NaN when there is none). */
HKR_API double hkr_run_error(const hkr_run* r, int k);
/* L1 error of component k against the reference solver (NaN unless option "reference" was set). */
HKR_API double hkr_run_reference_error(const hkr_run* r, int k);
HKR_API int hkr_run_has_threshold(const hkr_run* r);
HKR_API double hkr_run_threshold(const hkr_run* r);
HKR_API int hkr_run_passed(const hkr_run* r);
HKR_API hkr_status hkr_run_write_csv(const hkr_run* r, const char* path);

/* Summary table over several runs. */
HKR_API hkr_summary* hkr_summary_new(void);
HKR_API void hkr_summary_free(hkr_summary* s);
HKR_API hkr_status hkr_summary_add(hkr_summary* s, const hkr_run* r);
HKR_API int hkr_summary_size(const hkr_summary* s);
HKR_API int hkr_summary_passed(const hkr_summary* s);
HKR_API hkr_status hkr_summary_write_csv(const hkr_summary* s, const char* path);

/* Convergence study against the reference solver. nx_list may be NULL (scheme defaults). */
HKR_API hkr_status hkr_convergence_run(const char* case_id, const char* scheme, const int* nx_list, int count,
                                       const hkr_options* opts, hkr_convergence** out);
HKR_API void hkr_convergence_free(hkr_convergence* c);
HKR_API int hkr_convergence_rows(const hkr_convergence* c);
HKR_API int hkr_convergence_components(const hkr_convergence* c);
HKR_API int hkr_convergence_nx(const hkr_convergence* c, int row);
HKR_API double hkr_convergence_error(const hkr_convergence* c, int row, int k);
/* NaN on the first row and wherever the previous row is not a halving. */
HKR_API double hkr_convergence_order(const hkr_convergence* c, int row, int k);
/* Final-row h-order within tolerance of the target value (Test 11 only). */
HKR_API int hkr_convergence_passed(const hkr_convergence* c);
HKR_API hkr_status hkr_convergence_write_csv(const hkr_convergence* c, const char* path);

#ifdef __cplusplus
}
#endif

#endif
