/* C API for the ceslab library: opaque handles + integer status codes.
 * Every function returns CESLAB_OK (0) or a nonzero status; on failure
 * ceslab_last_error() describes the problem (thread-local storage).
 * Strings returned through char** are heap-allocated; release them with
 * ceslab_string_free. Handles are released with their *_free function. */
#ifndef CESLAB_H
#define CESLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define CESLAB_OK 0
#define CESLAB_EPARSE 1       /* malformed spec string / JSON / number */
#define CESLAB_EDOMAIN 2      /* argument lives on the wrong domain */
#define CESLAB_EUNSUPPORTED 3 /* valid request outside the implemented surface */
#define CESLAB_EINVAL 4       /* null pointer, bad enum value, bad range */
#define CESLAB_EINTERNAL 5    /* I/O failure or unexpected exception */

#define CESLAB_DOMAIN_UNIT 0
#define CESLAB_DOMAIN_HALFLINE 1

typedef struct ceslab_step ceslab_step;   /* nonnegative-measure step function */
typedef struct ceslab_seq ceslab_seq;     /* finitely supported sequence */
typedef struct ceslab_space ceslab_space; /* parsed space spec */

const char* ceslab_version(void);
/* Message for the most recent failure on this thread ("" if none). */
const char* ceslab_last_error(void);
void ceslab_string_free(char* s);

/* ---- step functions ------------------------------------------------- */
/* breakpoints: n_values + 1 ascending numbers starting at 0; for the unit
 * domain the last one must be 1. */
int ceslab_step_create(int domain_kind, const double* breakpoints,
                       size_t n_breakpoints, const double* values,
                       size_t n_values, ceslab_step** out);
int ceslab_step_from_json(const char* text, ceslab_step** out);
int ceslab_step_to_json(const ceslab_step* f, char** out);
int ceslab_step_eval(const ceslab_step* f, double x, double* out);
void ceslab_step_free(ceslab_step* f);

/* ---- sequences ------------------------------------------------------ */
int ceslab_seq_create(const double* values, size_t n, ceslab_seq** out);
/* Accepts a JSON array of numbers. */
int ceslab_seq_from_json(const char* text, ceslab_seq** out);
void ceslab_seq_free(ceslab_seq* s);

/* ---- spaces ---------------------------------------------------------- */
/* S-expression grammar, e.g. "Ces(Lp 2 (pow -0.25) halfline)". */
int ceslab_space_parse(const char* text, ceslab_space** out);
int ceslab_space_format(const ceslab_space* s, char** out);
void ceslab_space_free(ceslab_space* s);

/* ---- norms ----------------------------------------------------------- */
int ceslab_norm(const ceslab_step* f, const ceslab_space* X, double* value,
                double* error_bound);
int ceslab_seq_norm(const ceslab_seq* x, const ceslab_space* X, double* value,
                    double* error_bound);
int ceslab_associate_norm(const ceslab_step* g, const ceslab_space* X,
                          double* value, double* error_bound);
int ceslab_cesaro_dual_norm(const ceslab_seq* g, const ceslab_space* X,
                            double* value, double* error_bound);
int ceslab_down_norm(const ceslab_step* f, const ceslab_space* Xprime,
                     double* value, double* error_bound);

/* ---- level-function supremum ----------------------------------------- */
int ceslab_sinnamon(const ceslab_step* f, const ceslab_step* g, double* lp_value,
                    double* closed_form, double* witness_slack);
int ceslab_seq_sinnamon(const ceslab_seq* f, const ceslab_seq* g, double* lp_value,
                        double* closed_form, double* witness_slack);

/* ---- K-functional ----------------------------------------------------- */
int ceslab_k_functional(const ceslab_step* f, double t, double* out);
/* Weighted couple; weight_text uses the weight s-expression grammar
 * (e.g. "(pow 1)"). Emits the optimal-decomposition JSON. */
int ceslab_k_decomposition(const ceslab_step* f, double t, const char* weight_text,
                           char** json_out);

/* ---- reports ----------------------------------------------------------- */
/* Duality report for theorem in {2,...,8}; format "json" or "csv".
 * *pass reflects the in-band check and is valid on CESLAB_OK. */
int ceslab_duality_report(const char* space_text, int theorem, size_t samples,
                          uint64_t seed, const char* format, char** out, int* pass);

/* Hardy-inequality table "sample,lhs,rhs,margin". family_extremal != 0 uses
 * the near-extremal power family (closed forms), else random step samples. */
int ceslab_hardy_csv(double p, double alpha, int domain_kind, int family_extremal,
                     size_t samples, uint64_t seed, char** out, int* pass);

/* Deterministic plotting table "x,f,cf,tilde" with `points` rows. */
int ceslab_plot_csv(const ceslab_step* f, size_t points, char** out);

/* ---- acceptance suite --------------------------------------------------- */
int ceslab_suite_count(void);
/* Run one criterion (1-based id). samples = 0 and tolerance < 0 keep the
 * criterion's defaults. Out-params may be NULL when not needed. */
int ceslab_suite_criterion(int id, uint64_t seed, size_t samples, double tolerance,
                           const char* format, char** payload_out, char** name_out,
                           char** detail_out, int* pass);
/* Run every criterion (parallel). Returns the summary table
 * "id,name,pass,detail". If out_dir is non-NULL, writes one payload file per
 * criterion (criterion_NN.json / .csv) plus summary.csv into it.
 * *all_pass is valid on CESLAB_OK. */
int ceslab_suite_run(uint64_t seed, size_t samples, double tolerance,
                     const char* format, const char* out_dir, char** summary_out,
                     int* all_pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CESLAB_H */
