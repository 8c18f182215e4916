/* C interface to the heckecf library. */
#ifndef HECKECF_H
#define HECKECF_H

#include <stddef.h>

#if defined(_WIN32)
#define HCF_API __declspec(dllexport)
#else
#define HCF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HCF_OK = 0,
  HCF_DOMAIN = 1,   /* input violates a mathematical precondition */
  HCF_USAGE = 2,    /* malformed request (bad format name, null pointer, ...) */
  HCF_BUDGET = 3,   /* enumeration exceeded its budget */
  HCF_INTERNAL = 4
} hcf_status;

typedef struct hcf_field hcf_field;
typedef struct hcf_tree hcf_tree;
typedef struct hcf_attractor hcf_attractor;
typedef struct hcf_buffer hcf_buffer;

/* Message of the last failing call on this thread ("" if none). */
HCF_API const char* hcf_last_error(void);
HCF_API const char* hcf_version(void);

/* Buffers hold report output; size excludes the trailing NUL. */
HCF_API const char* hcf_buffer_data(const hcf_buffer* b);
HCF_API size_t hcf_buffer_size(const hcf_buffer* b);
HCF_API void hcf_buffer_free(hcf_buffer* b);

HCF_API hcf_status hcf_field_new(int m, hcf_field** out);
HCF_API void hcf_field_free(hcf_field* f);
HCF_API hcf_status hcf_field_degree(const hcf_field* f, int* out);
HCF_API hcf_status hcf_field_lambda(const hcf_field* f, double* out);
/* Sign of an expression in lambda, e.g. "2*L^2-3". */
HCF_API hcf_status hcf_field_sign(const hcf_field* f, const char* expr, int* out);

/* Comma-separated leaf words, e.g. "1,2f". */
HCF_API hcf_status hcf_tree_parse(int m, const char* text, hcf_tree** out);
/* Jump tree {1^n, 2f, 12f, ..., 1^(n-1)2f} for m = 3. */
HCF_API hcf_status hcf_tree_jump(int n, hcf_tree** out);
HCF_API hcf_status hcf_tree_power(const hcf_tree* t, int n, hcf_tree** out);
HCF_API void hcf_tree_free(hcf_tree* t);
HCF_API hcf_status hcf_tree_leaf_count(const hcf_tree* t, size_t* out);

typedef enum { HCF_EXACT_FIXED_POINT = 0, HCF_COVER_ONLY = 1 } hcf_attractor_status;

HCF_API hcf_status hcf_attractor_compute(const hcf_tree* t, int max_level, hcf_attractor** out);
HCF_API void hcf_attractor_free(hcf_attractor* a);
HCF_API hcf_status hcf_attractor_info(const hcf_attractor* a, hcf_attractor_status* status, int* level,
                                      size_t* components);
/* Component i of the final cover as doubles. */
HCF_API hcf_status hcf_attractor_component(const hcf_attractor* a, size_t i, double* lo, double* hi);
/* Exact endpoints as lambda-polynomial text. */
HCF_API hcf_status hcf_attractor_component_text(const hcf_attractor* a, size_t i, hcf_buffer** lo, hcf_buffer** hi);

/* Numerical quantities. picture is "unit" or "infinite". */
HCF_API hcf_status hcf_mu_density(const hcf_tree* t, const char* picture, double x, int level, double* value,
                                  double* error_bound);
HCF_API hcf_status hcf_minkowski_eval(int m, const char* x, int n, double* out);
HCF_API hcf_status hcf_hoelder_alpha(int m, double* out);
HCF_API hcf_status hcf_jsr_bounds(int m, int n_max, double* lower, double* upper);

/* Reports; format is "text", "json", "csv" or "svg". */
HCF_API hcf_status hcf_report_field(int m, int digits, const char* format, hcf_buffer** out);
HCF_API hcf_status hcf_report_generators(int m, const char* format, hcf_buffer** out);
HCF_API hcf_status hcf_report_embed(int m, const char* word, const char* target, const char* format,
                                    hcf_buffer** out);
HCF_API hcf_status hcf_report_tree_validate(int m, const char* tree, const char* format, hcf_buffer** out);
HCF_API hcf_status hcf_report_map_table(const hcf_tree* t, const char* format, hcf_buffer** out);
HCF_API hcf_status hcf_report_attractor(const hcf_attractor* a, int digits, const char* format, hcf_buffer** out);
HCF_API hcf_status hcf_report_dual(const hcf_attractor* a, int digits, const char* format, hcf_buffer** out);
HCF_API hcf_status hcf_report_census(hcf_attractor* a, const char* format, hcf_buffer** out);
/* samples > 0 tabulates M on a grid and ignores x. */
HCF_API hcf_status hcf_report_minkowski_eval(int m, const char* x, int n, int samples, const char* format,
                                             hcf_buffer** out);
HCF_API hcf_status hcf_report_minkowski_invert(int m, const char* y, int n, int digits, const char* format,
                                               hcf_buffer** out);
HCF_API hcf_status hcf_report_hoelder(int m, int digits, const char* format, hcf_buffer** out);
HCF_API hcf_status hcf_report_jsr(int m, int n_max, int witness, const char* format, hcf_buffer** out);

typedef struct {
  const char* picture; /* "unit" or "infinite"; NULL means unit */
  int level;
  double lo, hi;       /* hi <= lo selects the natural range */
  int samples;
} hcf_density_request;

HCF_API hcf_status hcf_report_density(const hcf_tree* t, const hcf_density_request* req, const char* format,
                                      hcf_buffer** out);
/* side is "forward" or "dual". */
HCF_API hcf_status hcf_report_transfer_check(const hcf_tree* t, const hcf_density_request* req, const char* side,
                                             const char* format, hcf_buffer** out);

typedef struct {
  const char* seed_x;   /* element text, optionally "m=K:" prefixed */
  const char* seed_y;
  size_t count;
  int interval_mode;    /* 0: exact, 1: MPFR intervals */
  unsigned precision_bits;
  int digits;
} hcf_orbit_request;

HCF_API hcf_status hcf_report_orbit(const hcf_tree* t, const hcf_orbit_request* req, const char* format,
                                    hcf_buffer** out);
HCF_API hcf_status hcf_report_poincare(const hcf_tree* t, int n, const char* format, hcf_buffer** out);

/* "cubic" -> "m=7:L-1". */
HCF_API hcf_status hcf_seed_preset(const char* name, hcf_buffer** out);

#ifdef __cplusplus
}
#endif

#endif
