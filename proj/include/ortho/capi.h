/* C interface of the orthocount shared library.
 *
 * Handles are opaque; every entry point returns a status code and writes
 * results through out-parameters. Reports own their serialized forms; the
 * returned strings stay valid until ortho_report_free.
 */
#ifndef ORTHO_CAPI_H
#define ORTHO_CAPI_H

#include <stdint.h>

#if defined(_WIN32)
#define ORTHO_API __declspec(dllexport)
#else
#define ORTHO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ortho_status {
  ORTHO_OK = 0,
  ORTHO_ERR_INVALID = 2,   /* bad arguments or preconditions */
  ORTHO_ERR_CAPACITY = 3,  /* enumeration or stabilization limits hit */
  ORTHO_ERR_INTERNAL = 4
} ortho_status;

typedef struct ortho_report ortho_report;

/* Human-readable detail of the last failing call on this thread. */
ORTHO_API const char* ortho_last_error(void);

/* ---- experiments; each fills a report handle on success ---------------- */

ORTHO_API ortho_status ortho_run_quad_count(int64_t a, int64_t b, int64_t c,
                                            double smax, int steps,
                                            int threads, ortho_report** out);

ORTHO_API ortho_status ortho_run_quad_verify_length(int64_t a, int64_t b,
                                                    int64_t c, int samples,
                                                    uint64_t seed,
                                                    ortho_report** out);

ORTHO_API ortho_status ortho_run_quad_irrationals(int64_t a, int64_t b,
                                                  int64_t c, double smax,
                                                  int steps,
                                                  ortho_report** out);

ORTHO_API ortho_status ortho_run_cusp_mertens(double smax, int steps,
                                              ortho_report** out);

ORTHO_API ortho_status ortho_run_cusp_bianchi(int64_t dk, double smax,
                                              int steps, ortho_report** out);

ORTHO_API ortho_status ortho_run_orbit_ball(const char* group, double smax,
                                            int steps, int threads,
                                            ortho_report** out);

ORTHO_API ortho_status ortho_run_herm_count(int64_t a, int64_t b_re,
                                            int64_t b_im, int64_t c,
                                            double bound, double slack,
                                            int steps, int threads,
                                            ortho_report** out);

/* ---- constants ---------------------------------------------------------- */

/* params is a comma separated "key=value" list, may be NULL or empty. */
ORTHO_API ortho_status ortho_const_eval(const char* name, const char* params,
                                        double* value);

/* Specialization identity check where one applies (master-constant routes):
 * writes the maximal relative error and sets *has_check = 0 when the named
 * constant has no second route. */
ORTHO_API ortho_status ortho_const_check(const char* name, const char* params,
                                         double* max_rel_err, int* has_check);

ORTHO_API ortho_status ortho_const_names(const char*** names, int* count);

/* ---- quaternion self test ------------------------------------------------ */

/* Runs the Hurwitz/Dieudonne invariant checks; returns ORTHO_OK when all
 * pass and writes a one-line summary. */
ORTHO_API ortho_status ortho_quat_selftest(char* summary, int summary_len);

/* ---- report access ------------------------------------------------------- */

ORTHO_API int ortho_report_num_rows(const ortho_report* r);
ORTHO_API ortho_status ortho_report_row(const ortho_report* r, int index,
                                        double* s, int64_t* count,
                                        double* prediction, double* ratio);
ORTHO_API ortho_status ortho_report_fit(const ortho_report* r,
                                        double* constant, double* drift);
ORTHO_API const char* ortho_report_param(const ortho_report* r,
                                         const char* key);
ORTHO_API const char* ortho_report_csv(const ortho_report* r);
ORTHO_API const char* ortho_report_json(const ortho_report* r);
ORTHO_API void ortho_report_free(ortho_report* r);

#ifdef __cplusplus
}
#endif

#endif /* ORTHO_CAPI_H */
