/*
 * Copyright 2026 The surgec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libsurgec.
 *
 * Every function returns a surgec_status. On failure the message of the
 * most recent error on the calling thread is available from
 * surgec_last_error(). Handles are opaque and freed with their _free
 * function; strings returned through char ** are freed with
 * surgec_string_free. Streams are plain stdio FILE pointers and are neither
 * closed nor rewound by the library.
 */
#ifndef SURGEC_SURGEC_H_
#define SURGEC_SURGEC_H_

#include <stddef.h>
#include <stdint.h>
#include <stdio.h>

#if defined(SURGEC_BUILDING_LIBRARY)
#define SURGEC_API __attribute__((visibility("default")))
#else
#define SURGEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum surgec_status {
  SURGEC_OK = 0,
  SURGEC_ERR_PARSE = 1,
  SURGEC_ERR_UNSUPPORTED_GATE = 2,
  SURGEC_ERR_INVALID_ARGUMENT = 3,
  SURGEC_ERR_NO_APPROXIMATION = 4,
  SURGEC_ERR_MISSING_CACHE_ENTRY = 5,
  SURGEC_ERR_UNSUPPORTED_BLOCK = 6,
  SURGEC_ERR_MID_CIRCUIT_MEASUREMENT = 7,
  SURGEC_ERR_LAYOUT = 8,
  SURGEC_ERR_UNKNOWN_PATCH = 9,
  SURGEC_ERR_NO_ROUTE = 10,
  SURGEC_ERR_DEADLOCK = 11,
  SURGEC_ERR_DEAD_PATCH = 12,
  SURGEC_ERR_BUDGET_EXCEEDED = 13,
  SURGEC_ERR_THRESHOLD = 14,
  SURGEC_ERR_IO = 15,
  SURGEC_ERR_INTERNAL = 16
} surgec_status;

SURGEC_API const char *surgec_version(void);
/* Version, git revision and compiler. */
SURGEC_API const char *surgec_build_info(void);
SURGEC_API const char *surgec_status_name(surgec_status status);
/* Message of the last failure on this thread; "" if none. */
SURGEC_API const char *surgec_last_error(void);
/* Nonzero for statuses caused by the input rather than by a library bug. */
SURGEC_API int surgec_status_is_input_error(surgec_status status);
SURGEC_API void surgec_string_free(char *s);

/* ------------------------------------------------------------ compiling */

typedef enum surgec_mode { SURGEC_MODE_DIRECT = 0, SURGEC_MODE_COMPRESSED = 1 } surgec_mode;

typedef struct surgec_compile_options {
  surgec_mode mode;
  int litinski;        /* measure everything at the end, drop Cliffords */
  int peephole;        /* dead-gate elimination */
  int boundary_rotate; /* emit ROT after every transversal H */
  double epsilon;      /* approximation precision */
  const char *cache_path; /* approximation cache, or NULL */
  int cache_only;      /* fail instead of searching when the cache misses */
  int target_first_cx; /* read `cx t,c` instead of `cx c,t` */
} surgec_compile_options;

typedef struct surgec_compile_stats {
  uint64_t qubits;
  uint64_t gates_in;
  uint64_t gates_after_peephole;
  uint64_t approximated_rotations;
  uint64_t lli;
  uint64_t magic_states;
  uint64_t conditionals;
  uint64_t patches;
} surgec_compile_stats;

SURGEC_API void surgec_compile_options_init(surgec_compile_options *options);

/* OpenQASM from `in`, one LLI per line to `out`. `stats` may be NULL. */
SURGEC_API surgec_status surgec_compile(const surgec_compile_options *options, FILE *in,
                                        FILE *out, surgec_compile_stats *stats);

/* n-qubit QFT as OpenQASM. */
SURGEC_API surgec_status surgec_qft_qasm(uint64_t n, FILE *out);
/* n-qubit QFT compiled straight to LLI. */
SURGEC_API surgec_status surgec_qft_lli(uint64_t n, const surgec_compile_options *options,
                                        FILE *out, surgec_compile_stats *stats);

/* --------------------------------------------------------------- layouts */

typedef struct surgec_layout surgec_layout;

SURGEC_API surgec_status surgec_layout_load(const char *path, surgec_layout **out);
SURGEC_API surgec_status surgec_layout_parse(const char *text, surgec_layout **out);
SURGEC_API void surgec_layout_free(surgec_layout *layout);
SURGEC_API int surgec_layout_rows(const surgec_layout *layout);
SURGEC_API int surgec_layout_cols(const surgec_layout *layout);
SURGEC_API size_t surgec_layout_qubits(const surgec_layout *layout);
SURGEC_API size_t surgec_layout_routing_cells(const surgec_layout *layout);
SURGEC_API size_t surgec_layout_ancilla_cells(const surgec_layout *layout);
SURGEC_API size_t surgec_layout_regions(const surgec_layout *layout);
SURGEC_API size_t surgec_layout_warning_count(const surgec_layout *layout);
SURGEC_API const char *surgec_layout_warning(const surgec_layout *layout, size_t i);

/* --------------------------------------------------------------- slicing */

typedef enum surgec_slice_format {
  SURGEC_SLICES_JSON = 0,   /* one JSON array of slices */
  SURGEC_SLICES_NDJSON = 1, /* one slice object per line */
  SURGEC_SLICES_NONE = 2    /* statistics only */
} surgec_slice_format;

typedef struct surgec_slice_options {
  int distill_period;
  int route_cache;
  int instant_magic;
  surgec_slice_format format;
} surgec_slice_options;

SURGEC_API void surgec_slice_options_init(surgec_slice_options *options);

/* LLI text from `in`, slices to `out` (may be NULL for SURGEC_SLICES_NONE).
 * `stats_json` receives the run statistics as a JSON object if not NULL. */
SURGEC_API surgec_status surgec_slice(const surgec_layout *layout,
                                      const surgec_slice_options *options, FILE *in,
                                      FILE *out, char **stats_json);

/* ---------------------------------------------------------- verification */

typedef struct surgec_verify_result {
  int pass;
  double trace_distance;
  double tolerance;
  uint64_t branches;
  int exhaustive;
  uint64_t lli;
  uint64_t approximated_rotations;
} surgec_verify_result;

/* Compiles the circuit in `qasm_path` (or checks the LLI in `lli_path` if it
 * is not NULL) and compares the simulated result with a dense simulation.
 * `summary` receives a one-line report if not NULL. */
SURGEC_API surgec_status surgec_verify(const char *qasm_path, const char *lli_path,
                                       const surgec_compile_options *options,
                                       uint64_t seed, size_t max_amplitudes,
                                       surgec_verify_result *result, char **summary);

/* Replays LLI from `in` through the lazy simulator and writes one JSON
 * snapshot per line to `out`: per slice if `layout` is given, per
 * instruction otherwise. Patch ids below `data_patches` start in |0>. */
SURGEC_API surgec_status surgec_snapshots(FILE *in, const surgec_layout *layout,
                                          uint64_t data_patches, uint64_t seed,
                                          int amplitudes, size_t max_amplitudes,
                                          FILE *out);

/* ------------------------------------------------------------- resources */

typedef struct surgec_error_model {
  double prefactor;
  double threshold;
  double qubits_per_patch_factor;
} surgec_error_model;

typedef struct surgec_resource_report {
  int distance;
  uint64_t qubits_per_patch;
  uint64_t total_qubits;
  uint64_t volume;
  double failure_bound;
} surgec_resource_report;

SURGEC_API void surgec_error_model_init(surgec_error_model *model);
SURGEC_API surgec_status surgec_logical_error_rate(double p, int d,
                                                   const surgec_error_model *model,
                                                   double *rate);
SURGEC_API surgec_status surgec_min_distance(double p, uint64_t cells, uint64_t slices,
                                             double success,
                                             const surgec_error_model *model,
                                             surgec_resource_report *report);
/* Same, reading cells and slices from run statistics JSON. */
SURGEC_API surgec_status surgec_estimate_json(const char *stats_json, double p,
                                              double success,
                                              const surgec_error_model *model,
                                              surgec_resource_report *report);

/* Writes CSV rows (width, depth, lli, cells, slices, volume, distance, qubits,
 * failure_bound, error) for every grid point. */
SURGEC_API surgec_status surgec_sweep(const uint64_t *widths, size_t n_widths,
                                      const uint64_t *depths, size_t n_depths, double p,
                                      double success, uint64_t seed,
                                      const surgec_compile_options *options,
                                      const surgec_error_model *model, FILE *out);

#ifdef __cplusplus
}
#endif

#endif /* SURGEC_SURGEC_H_ */
