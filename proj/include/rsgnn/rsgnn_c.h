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

#ifndef RSGNN_RSGNN_C_H_
#define RSGNN_RSGNN_C_H_

/* C interface to the representative-selection library. Structured inputs
 * and outputs travel as UTF-8 JSON strings; strings returned through `char**`
 * out-parameters must be released with rsgnn_string_free. On failure every
 * function returns a nonzero status and rsgnn_last_error describes it. */

#include <stddef.h>

#if defined(_WIN32)
#define RSGNN_API __declspec(dllexport)
#else
#define RSGNN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rsgnn_status {
  RSGNN_OK = 0,
  RSGNN_ERR_CONTRACT = 1,
  RSGNN_ERR_VALIDATION = 2,
  RSGNN_ERR_CAPACITY = 3,
  RSGNN_ERR_LOAD = 5,
  RSGNN_ERR_NUMERIC = 6,
  RSGNN_ERR_INCONSISTENT = 7,
  RSGNN_ERR_INTERNAL = 9
} rsgnn_status;

typedef struct rsgnn_dataset rsgnn_dataset;

RSGNN_API rsgnn_status rsgnn_dataset_load(const char* dir, rsgnn_dataset** out);
RSGNN_API void rsgnn_dataset_free(rsgnn_dataset* dataset);
RSGNN_API size_t rsgnn_dataset_num_nodes(const rsgnn_dataset* dataset);
RSGNN_API int rsgnn_dataset_num_classes(const rsgnn_dataset* dataset);

/* "14", "2c", ... resolved against num_classes. */
RSGNN_API rsgnn_status rsgnn_resolve_budget(const char* spec, int num_classes,
                                            size_t* k);

/* Runs one selector. `options_json` may be NULL; see the README for keys.
 * Writes {"selector", "seed", "k", "nodes"}. */
RSGNN_API rsgnn_status rsgnn_select(const rsgnn_dataset* dataset,
                                    const char* selector,
                                    const char* options_json, char** reps_json);

/* Trains and scores the classifier for seeds seed .. seed + runs - 1.
 * Writes {"records": [...], "csv_header": ..., "csv_rows": [...]}. */
RSGNN_API rsgnn_status rsgnn_evaluate(const rsgnn_dataset* dataset,
                                      const char* reps_json,
                                      const char* options_json,
                                      char** result_json);

/* Selection + evaluation for every selector and run, with summaries and
 * significance flags. Same CSV fields as rsgnn_evaluate. */
RSGNN_API rsgnn_status rsgnn_bench(const rsgnn_dataset* dataset,
                                   const char* options_json, char** result_json);

/* Writes a generated Fit-or-Not instance to `out_dir` in dataset format.
 * Spec keys: mode (planted | random_pairs | from_graph), seed, and the
 * mode's sizes. */
RSGNN_API rsgnn_status rsgnn_fon_generate(const char* spec_json,
                                          const char* out_dir);

/* Gap experiment on the Fit-or-Not instance stored in `dataset_dir`. */
RSGNN_API rsgnn_status rsgnn_fon_gap(const char* dataset_dir,
                                     const char* options_json,
                                     char** report_json);

/* Joint-loss gradient check; `passed` receives 1 or 0. */
RSGNN_API rsgnn_status rsgnn_gradcheck(const char* options_json,
                                       char** report_json, int* passed);

/* Message of the last failure on the calling thread; empty if none. */
RSGNN_API const char* rsgnn_last_error(void);

RSGNN_API void rsgnn_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* RSGNN_RSGNN_C_H_ */
