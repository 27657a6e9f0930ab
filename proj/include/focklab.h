/* Copyright 2026 The Focklab Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the focklab shared library: truncated bosonic Fock spaces
 * with epsilon-scaled commutation relations, semiclassical limit experiments,
 * and a configuration-driven experiment runner.
 *
 * All functions return FOCKLAB_OK on success. On failure a thread-local
 * message is available through focklab_last_error(). Strings returned through
 * char** are heap allocated and must be released with focklab_string_free().
 */

#ifndef FOCKLAB_H
#define FOCKLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FOCKLAB_API __declspec(dllexport)
#else
#define FOCKLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t focklab_status;

enum {
  FOCKLAB_OK = 0,
  FOCKLAB_ERROR_INVALID_ARGUMENT = 1, /* bad config, bad parameter, unknown id */
  FOCKLAB_ERROR_GUARD = 2,            /* truncation/regime guard violated */
  FOCKLAB_ERROR_RUNTIME = 3,          /* internal numerical failure */
};

FOCKLAB_API const char* focklab_version(void);

/* Thread-local message describing the most recent failure in this thread. */
FOCKLAB_API const char* focklab_last_error(void);

FOCKLAB_API void focklab_string_free(char* s);

/* ---- truncated Fock spaces (opaque handles) ---- */

typedef struct focklab_space focklab_space;

/* Truncated symmetric Fock space over C^d, occupations |alpha| <= n_max,
 * semiclassical parameter epsilon > 0. Fails with
 * FOCKLAB_ERROR_INVALID_ARGUMENT when the truncation is too large. */
FOCKLAB_API focklab_status focklab_space_create(int32_t d, int32_t n_max,
                                                double epsilon,
                                                focklab_space** out);
FOCKLAB_API void focklab_space_destroy(focklab_space* space);

FOCKLAB_API int32_t focklab_space_dim(const focklab_space* space);
FOCKLAB_API int32_t focklab_space_n_max(const focklab_space* space);
FOCKLAB_API double focklab_space_epsilon(const focklab_space* space);
FOCKLAB_API int64_t focklab_space_total_dim(const focklab_space* space);
/* C(n + d - 1, d - 1), 0 outside [0, n_max] */
FOCKLAB_API int64_t focklab_space_block_dim(const focklab_space* space, int32_t n);

/* L2 mass a coherent state of amplitude z loses to the truncation;
 * z is interleaved (re, im) of length 2 d. */
FOCKLAB_API focklab_status focklab_coherent_tail_mass(const focklab_space* space,
                                                      const double* z_interleaved,
                                                      double* out);

/* G_eps(xi) of the coherent state E(z): out_re/out_im receive the value.
 * xi and z are interleaved (re, im) of length 2 d. */
FOCKLAB_API focklab_status focklab_coherent_char(const focklab_space* space,
                                                 const double* z_interleaved,
                                                 const double* xi_interleaved,
                                                 double* out_re, double* out_im);

/* ---- experiment runner ---- */

/* JSON catalog of experiment ids with one-line summaries:
 * [{"id": ..., "summary": ...}, ...] */
FOCKLAB_API focklab_status focklab_experiment_list(char** out_json);

/* Runs the experiment named in config_json["experiment"] (or experiment_id
 * when non-NULL). Writes per-experiment CSV files plus verdict.json under
 * out_dir when out_dir is non-NULL; nothing is written on config or guard
 * errors. verdict_json receives the verdict document.
 * Returns FOCKLAB_OK for a completed run (the verdict carries pass/fail),
 * FOCKLAB_ERROR_INVALID_ARGUMENT / FOCKLAB_ERROR_GUARD otherwise. */
FOCKLAB_API focklab_status focklab_experiment_run(const char* experiment_id,
                                                  const char* config_json,
                                                  const char* out_dir,
                                                  uint64_t seed, int32_t jobs,
                                                  char** verdict_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FOCKLAB_H */
