/*
Copyright 2026 The snlt Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#ifndef SNLT_H
#define SNLT_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(SNLT_BUILDING_LIBRARY)
#define SNLT_API __declspec(dllexport)
#else
#define SNLT_API __declspec(dllimport)
#endif
#else
#define SNLT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum snlt_status {
  SNLT_OK = 0,
  SNLT_E_DOMAIN = 1,
  SNLT_E_INVALID_MODEL = 2,
  SNLT_E_SOLVER = 3,
  SNLT_E_NUMERIC = 4,
  SNLT_E_OVERFLOW = 5,
  SNLT_E_DEGENERATE = 6,
  SNLT_E_CONSISTENCY = 7,
  SNLT_E_ESTIMATION = 8,
  SNLT_E_PARSE = 9,
  SNLT_E_EXISTENCE = 10,
  SNLT_E_NULL = 98,
  SNLT_E_INTERNAL = 99
} snlt_status;

typedef struct snlt_model snlt_model;
typedef struct snlt_scale snlt_scale;
typedef struct snlt_params snlt_params;
typedef struct snlt_result snlt_result;
typedef struct snlt_grid snlt_grid;

SNLT_API const char* snlt_version(void);
/* Message of the last failed call on this thread; "" if none. */
SNLT_API const char* snlt_last_error(void);
SNLT_API const char* snlt_status_name(snlt_status s);

/* Models. */
SNLT_API snlt_status snlt_model_from_json(const char* text, snlt_model** out);
/* jump_rate = 0 gives linear Brownian motion. */
SNLT_API snlt_status snlt_model_create(double sigma, double gamma, double jump_rate, double jump_mean,
                                       snlt_model** out);
/* Writes at most cap bytes including the terminator; *needed gets the full size. */
SNLT_API snlt_status snlt_model_to_json(const snlt_model* m, char* buf, size_t cap, size_t* needed);
SNLT_API double snlt_model_psi(const snlt_model* m, double theta);
SNLT_API void snlt_model_free(snlt_model* m);

/* Scale functions. nodes = 0 selects the closed form. */
SNLT_API snlt_status snlt_scale_create(const snlt_model* m, double q, int nodes, snlt_scale** out);
/* Any of w, z, dwdq may be NULL. */
SNLT_API snlt_status snlt_scale_eval(const snlt_scale* s, double x, double* w, double* z, double* dwdq);
SNLT_API snlt_status snlt_scale_log_w(const snlt_scale* s, double x, double* out);
SNLT_API double snlt_scale_phi(const snlt_scale* s);
SNLT_API const char* snlt_scale_family(const snlt_scale* s);
SNLT_API void snlt_scale_free(snlt_scale* s);

/* key=value parameter sets for the law registry. */
SNLT_API snlt_params* snlt_params_create(void);
SNLT_API snlt_status snlt_params_set(snlt_params* p, const char* key, const char* value);
SNLT_API snlt_status snlt_params_parse(snlt_params* p, const char* assignment);
SNLT_API void snlt_params_free(snlt_params* p);

SNLT_API size_t snlt_law_count(void);
SNLT_API snlt_status snlt_law_info(size_t index, const char** id, const char** keys, const char** summary);
SNLT_API snlt_status snlt_law_eval(const char* id, const snlt_model* m, const snlt_params* p, snlt_result** out);
SNLT_API snlt_status snlt_mc_verify(const char* id, const snlt_model* m, const snlt_params* p, snlt_result** out);
SNLT_API size_t snlt_mc_law_count(void);
SNLT_API const char* snlt_mc_law_id(size_t index);

/* Result tables. */
SNLT_API size_t snlt_result_columns(const snlt_result* r);
SNLT_API const char* snlt_result_column_name(const snlt_result* r, size_t col);
SNLT_API size_t snlt_result_rows(const snlt_result* r);
SNLT_API const char* snlt_result_row_label(const snlt_result* r, size_t row);
SNLT_API double snlt_result_value(const snlt_result* r, size_t row, size_t col);
SNLT_API size_t snlt_result_note_count(const snlt_result* r);
SNLT_API const char* snlt_result_note(const snlt_result* r, size_t i);
SNLT_API void snlt_result_free(snlt_result* r);

/* Volterra grids. omega uses the text form "const:q", "step:l1,..:h0,..", "delta:a,p,eps", joined by '+'. */
SNLT_API snlt_status snlt_omega_solve(const snlt_model* m, double q0, const char* omega, double c, double b, double h,
                                      const double* points, size_t npoints, snlt_grid** out);
SNLT_API size_t snlt_grid_size(const snlt_grid* g);
SNLT_API double snlt_grid_node(const snlt_grid* g, size_t i);
SNLT_API snlt_status snlt_grid_w(const snlt_grid* g, double x, double y, double* out);
SNLT_API snlt_status snlt_grid_z(const snlt_grid* g, double x, double* out);
/* Same buffer convention as snlt_model_to_json. */
SNLT_API snlt_status snlt_grid_csv(const snlt_grid* g, char* buf, size_t cap, size_t* needed);
SNLT_API size_t snlt_grid_warning_count(const snlt_grid* g);
SNLT_API const char* snlt_grid_warning(const snlt_grid* g, size_t i);
SNLT_API void snlt_grid_free(snlt_grid* g);

/* Acceptance gates. Rows are gates; columns are value, bound, passed, criterion. */
SNLT_API snlt_status snlt_conformance_run(int quick, unsigned threads, snlt_result** out);

#ifdef __cplusplus
}
#endif

#endif /* SNLT_H */
