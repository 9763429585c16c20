/* SPDX-License-Identifier: Apache-2.0
 * Copyright 2026 The lyapinf Authors
 *
 * C interface of the lyapinf library. All matrices are row-major arrays of
 * doubles. Handles are opaque and owned by the caller once returned.
 */
#ifndef LYAPINF_H
#define LYAPINF_H

#include <stddef.h>
#include <stdint.h>

#if defined(LYAPINF_BUILDING_LIBRARY)
#define LYAPINF_API __attribute__((visibility("default")))
#else
#define LYAPINF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lyapinf_status {
  LYAPINF_OK = 0,
  LYAPINF_ERR_INPUT = 1,          /* schema, shape or argument error */
  LYAPINF_ERR_NUMERICAL = 2,      /* a numerical routine failed */
  LYAPINF_ERR_PRECONDITION = 3,   /* e.g. A has no unique Lyapunov solution */
  LYAPINF_ERR_IO = 4,
  LYAPINF_ERR_NO_SOLUTION = 5,    /* report carries no solution */
  LYAPINF_ERR_INTERNAL = 6
} lyapinf_status;

/* Exit-code contract of the commands (same values as the CLI). */
enum {
  LYAPINF_EXIT_INFORMATIVE = 0,
  LYAPINF_EXIT_INPUT_ERROR = 1,
  LYAPINF_EXIT_NOT_INFORMATIVE = 2,
  LYAPINF_EXIT_ASSUMPTION_VIOLATED = 3,
  LYAPINF_EXIT_INTEGRITY_FAILURE = 4
};

typedef struct lyapinf_instance lyapinf_instance;
typedef struct lyapinf_report lyapinf_report;

/* Tolerance fields <= 0 mean "use the instance file or library default". */
typedef struct lyapinf_options {
  double rank_tol;
  double gap_tol;
  double agree_tol;
  int has_seed;
  uint64_t seed;
  int samples; /* oracle sample count; <= 0 means 32 */
  int reduced; /* solve: use the reduced special-case path */
} lyapinf_options;

LYAPINF_API void lyapinf_options_default(lyapinf_options* options);

/* Message of the last failed call on this thread ("" if none). */
LYAPINF_API const char* lyapinf_last_error(void);
LYAPINF_API const char* lyapinf_status_string(lyapinf_status status);

LYAPINF_API lyapinf_status lyapinf_instance_load_file(const char* path,
                                                      lyapinf_instance** out);
LYAPINF_API lyapinf_status lyapinf_instance_parse(const char* json_text,
                                                  const char* source_name,
                                                  lyapinf_instance** out);
LYAPINF_API void lyapinf_instance_free(lyapinf_instance* instance);
LYAPINF_API size_t lyapinf_instance_dim(const lyapinf_instance* instance);

/* Commands. A report is produced whenever the status is LYAPINF_OK, even
 * for non-zero exit codes; options may be NULL. */
LYAPINF_API lyapinf_status lyapinf_check(const lyapinf_instance* instance,
                                         const lyapinf_options* options,
                                         lyapinf_report** out);
/* member: optional n*n row-major matrix at which to evaluate (may be NULL). */
LYAPINF_API lyapinf_status lyapinf_solve(const lyapinf_instance* instance,
                                         const lyapinf_options* options,
                                         const double* member,
                                         lyapinf_report** out);
LYAPINF_API lyapinf_status lyapinf_verify(const lyapinf_instance* instance,
                                          const lyapinf_options* options,
                                          lyapinf_report** out);
/* Simulates a system spec; out_path may be NULL to only build the report,
 * whose JSON is then the generated instance document. */
LYAPINF_API lyapinf_status lyapinf_simulate(const char* spec_path,
                                            const char* out_path,
                                            lyapinf_report** out);

LYAPINF_API int lyapinf_report_exit_code(const lyapinf_report* report);
/* "informative", "not_informative", "assumption_violated" or "" */
LYAPINF_API const char* lyapinf_report_verdict(const lyapinf_report* report);
LYAPINF_API const char* lyapinf_report_text(const lyapinf_report* report);
/* indent < 0 gives compact JSON. */
LYAPINF_API const char* lyapinf_report_json(lyapinf_report* report, int indent);
/* Copies P* (n*n, row-major) into out; LYAPINF_ERR_NO_SOLUTION if absent. */
LYAPINF_API lyapinf_status lyapinf_report_solution(const lyapinf_report* report,
                                                   double* out, size_t n);
LYAPINF_API void lyapinf_report_free(lyapinf_report* report);

/* Direct kernels. */
LYAPINF_API lyapinf_status lyapinf_solve_lyapunov(const double* a, const double* q,
                                                  size_t n, double gap_tol,
                                                  double* p_out);
/* Smallest |lambda_i + lambda_j| over eigenvalue pairs of A. */
LYAPINF_API lyapinf_status lyapinf_spectral_gap(const double* a, size_t n,
                                                double* gap_out);

#ifdef __cplusplus
}
#endif

#endif /* LYAPINF_H */
