// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSM_C_API_H_
#define PSM_C_API_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PSM_API __declspec(dllexport)
#else
#define PSM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

// Status codes. PSM_CONFIG and PSM_INCOMPATIBLE match the CLI exit codes.
typedef enum psm_status {
  PSM_OK = 0,
  PSM_INVALID_ARGUMENT = 1,
  PSM_CONFIG = 2,
  PSM_INCOMPATIBLE = 3,
  PSM_BUFFER_TOO_SMALL = 4,
  PSM_INTERNAL = 5,
} psm_status;

typedef struct psm_function psm_function;
typedef struct psm_matroid psm_matroid;
typedef struct psm_experiment psm_experiment;
typedef struct psm_report psm_report;

typedef struct psm_run_options {
  int workers;
  int compute_opt;
  int timing;
} psm_run_options;

PSM_API const char* psm_version(void);

// Message for the last failing call on this thread, "" if none.
PSM_API const char* psm_last_error_message(void);

// Frees strings returned through char** out-parameters.
PSM_API void psm_string_free(char* s);

PSM_API psm_status psm_function_from_json(const char* json,
                                          psm_function** out);
PSM_API psm_status psm_function_size(const psm_function* f, int* out);
PSM_API psm_status psm_function_eval(const psm_function* f,
                                     const int32_t* elements, size_t count,
                                     double* out);
PSM_API void psm_function_free(psm_function* f);

PSM_API psm_status psm_matroid_from_json(const char* json, psm_matroid** out);
PSM_API psm_status psm_matroid_size(const psm_matroid* m, int* out);
PSM_API psm_status psm_matroid_is_independent(const psm_matroid* m,
                                              const int32_t* elements,
                                              size_t count, int* out);
// Only defined for matroids; a matchoid gives PSM_INCOMPATIBLE.
PSM_API psm_status psm_matroid_rank(const psm_matroid* m,
                                    const int32_t* elements, size_t count,
                                    int* out);
// Writes the span into buffer. On PSM_BUFFER_TOO_SMALL, *out_count holds the
// required size.
PSM_API psm_status psm_matroid_span(const psm_matroid* m,
                                    const int32_t* elements, size_t count,
                                    int32_t* buffer, size_t capacity,
                                    size_t* out_count);
PSM_API void psm_matroid_free(psm_matroid* m);

PSM_API psm_status psm_experiment_from_json(const char* json,
                                            psm_experiment** out);
// Null options run with one worker, OPT enabled and no timing.
PSM_API psm_status psm_experiment_run(const psm_experiment* e,
                                      const psm_run_options* options,
                                      psm_report** out);
PSM_API void psm_experiment_free(psm_experiment* e);

PSM_API psm_status psm_report_json(const psm_report* r, char** out);
PSM_API psm_status psm_report_csv(const psm_report* r, int header, char** out);
PSM_API psm_status psm_report_mean_value(const psm_report* r, double* out);
PSM_API void psm_report_free(psm_report* r);

// Writes a runnable experiment config for a generator kind. params_json is
// an object of generator parameters.
PSM_API psm_status psm_generate_instance(const char* kind,
                                         const char* params_json,
                                         uint64_t seed, char** out);

// Runs one repetition of an algorithm on the given handles and writes the
// selected set into buffer. Fractional outputs are not available here.
PSM_API psm_status psm_solve(const psm_matroid* m, const psm_function* f,
                             const char* algorithm, double eps, uint64_t seed,
                             int32_t* buffer, size_t capacity,
                             size_t* out_count, double* out_value,
                             int64_t* out_rounds);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // PSM_C_API_H_
