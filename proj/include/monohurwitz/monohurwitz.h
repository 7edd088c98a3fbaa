/* C interface to the monotone Hurwitz number engine.
 *
 * The library computes the one-part monotone Hurwitz numbers E(n,g) exactly
 * from their linear recurrence, evaluates the asymptotic guess Omega(n,g)
 * in extended precision, and runs the empirical verification scans
 * (convergence ratios, recurrence residuals, decay fits).
 *
 * All functions return mh_status; results travel through out-parameters.
 * Strings returned through char** are heap-allocated and must be released
 * with mh_string_free. Handles are opaque and freed with their *_free
 * function. A built table is immutable and safe for concurrent reads.
 */
#ifndef MONOHURWITZ_H
#define MONOHURWITZ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mh_status {
  MH_OK = 0,
  MH_CHECK_FAILED = 1,  /* a mathematical invariant did not hold */
  MH_BAD_ARGUMENT = 2,  /* argument or domain error */
  MH_CAP_EXCEEDED = 3,  /* grid larger than the configured cell cap */
  MH_IO_ERROR = 4,
  MH_INTERNAL_ERROR = 5
} mh_status;

typedef struct mh_table mh_table;
typedef struct mh_evaluator mh_evaluator;

typedef struct mh_run_config {
  uint32_t n_max;            /* default 1000 */
  uint32_t g_max;            /* default 1000 */
  const double* theta_list;  /* diagonals for the convergence scans */
  size_t theta_count;        /* 0 selects the default {0.25, 1, 4} */
  uint32_t mantissa_bits;    /* default 128 */
  int boundary_calibrated;   /* 0: paper constant, 1: calibrated */
  uint64_t cell_cap;         /* default 4e6 */
  uint32_t threads;          /* table fill workers, default 1 */
} mh_run_config;

void mh_run_config_defaults(mh_run_config* cfg);

void mh_string_free(char* s);
const char* mh_status_message(mh_status s);
/* Human-readable detail for the most recent failure on this thread. */
const char* mh_last_error(void);

/* ---- exact table ------------------------------------------------------ */

mh_status mh_table_build(uint32_t n_max, uint32_t g_max, uint64_t cell_cap,
                         uint32_t threads, mh_table** out);
void mh_table_free(mh_table* t);
/* Reduced numerator/denominator of E(n,g) in decimal. */
mh_status mh_table_entry(const mh_table* t, uint32_t n, uint32_t g,
                         char** numerator, char** denominator);
/* ln E(n,g); requires E(n,g) > 0. */
mh_status mh_table_log_entry(const mh_table* t, uint32_t n, uint32_t g,
                             double* out);
/* CSV "n,g,numerator,denominator,log_value". */
mh_status mh_table_export_csv(const mh_table* t, const char* path);

/* Catalan number (2n)!/((n+1)! n!) in decimal, independent of the table. */
mh_status mh_catalan(uint32_t n, char** out);

/* ---- enumeration oracle ------------------------------------------------ */

/* Raw monotone factorization count for d symbols, k factors (d<=7, k<=14). */
mh_status mh_oracle_raw_count(uint32_t d, uint32_t k, char** out);
/* Compares oracle and recurrence over the guarded range; MH_OK when every
 * value matches, MH_CHECK_FAILED otherwise. CSV written when path != NULL. */
mh_status mh_oracle_check(uint32_t d_max, uint32_t k_max, const char* csv_path);

/* ---- asymptotic evaluator ---------------------------------------------- */

mh_status mh_evaluator_create(uint32_t mantissa_bits, double theta_switch,
                              uint32_t series_terms, mh_evaluator** out);
void mh_evaluator_free(mh_evaluator* e);

mh_status mh_eval_theta_of_lambda(const mh_evaluator* e, double lambda, double* out);
mh_status mh_eval_lambda_of_theta(const mh_evaluator* e, double theta, double* out);
mh_status mh_eval_lambda_prime(const mh_evaluator* e, double theta, double* out);
mh_status mh_eval_f(const mh_evaluator* e, double theta, double* out);
mh_status mh_eval_j(const mh_evaluator* e, double theta, double* out);
/* f' is +inf at theta = 0; *infinite is set accordingly. */
mh_status mh_eval_f_prime(const mh_evaluator* e, double theta, double* out,
                          int* infinite);
mh_status mh_eval_f_double_prime(const mh_evaluator* e, double theta, double* out);
mh_status mh_eval_j_prime(const mh_evaluator* e, double theta, double* out);
mh_status mh_eval_f0_j0(const mh_evaluator* e, double theta, double* f0, double* j0);

/* ln Omega(n,g); branch: 0 boundary row, 1 low theta, 2 general. */
mh_status mh_eval_log_omega(const mh_evaluator* e, uint32_t n, uint32_t g,
                            double* log_value, int* branch);
mh_status mh_eval_log_c(const mh_evaluator* e, uint32_t g, double* out);

/* CSV "theta,lambda,f,j,f_prime,f_double_prime,j_prime,lambda_prime". */
mh_status mh_functions_export_csv(const mh_evaluator* e, const double* thetas,
                                  size_t count, const char* path);

/* ---- verification harness --------------------------------------------- */

/* Diagonal scans plus the assumption report. Writes one
 * "converge_theta_<value>.csv" per diagonal under out_dir and, when
 * report_text != NULL, returns the report. MH_OK when every harness
 * invariant holds, MH_CHECK_FAILED otherwise. */
mh_status mh_converge_run(const mh_run_config* cfg, const char* out_dir,
                          char** report_text);

/* Residual suite for the heuristic ODE system; CSV written when
 * out_path != NULL. MH_OK iff all residual bounds hold. */
mh_status mh_ode_check_run(const mh_run_config* cfg, const char* out_path,
                           char** report_text);

/* Consolidated run: oracle check, ODE suite, convergence scans. */
mh_status mh_report_run(const mh_run_config* cfg, const char* out_dir,
                        char** report_text);

#ifdef __cplusplus
}
#endif

#endif /* MONOHURWITZ_H */
