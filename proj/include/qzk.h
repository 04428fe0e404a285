/* qzk: exact q-series kernel for multiple q-zeta values.
 *
 * C surface of the shared library. All objects are opaque handles owned
 * by the library; every function reports a qzk_status and writes its
 * results through out-parameters. Strings returned through char** are
 * heap-allocated by the library and must be released with
 * qzk_string_free. Numeric payloads are exact rationals rendered as
 * "p" or "p/q"; structured payloads are UTF-8 JSON.
 */

#ifndef QZK_H
#define QZK_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qzk_status {
	QZK_OK = 0,
	QZK_EINVAL = 1,    /* malformed argument */
	QZK_EDOMAIN = 2,   /* operation undefined on this input */
	QZK_EBUDGET = 3,   /* term/tuple/recursion budget exceeded */
	QZK_ESATURATED = 4,/* Laurent truncation dropped needed terms */
	QZK_EINTERNAL = 5  /* invariant violation inside the library */
} qzk_status;

typedef struct qzk_series qzk_series; /* truncated q-series */
typedef struct qzk_elem qzk_elem;     /* multivariate ring element */

typedef struct qzk_options {
	int order;               /* q-truncation order; -1 = per-command default */
	int degree;              /* formal total-degree bound; -1 = default */
	int ybound;              /* Laurent bound; -1 = order */
	long long budget_terms;  /* term budget for product expansion */
	int budget_depth;        /* rewrite recursion depth budget */
	int certify_steps;       /* nonzero: oracle-check every rewrite step */
	int with_ab;             /* traces: include the formal a,b exponents */
} qzk_options;

void qzk_options_init(qzk_options *opts);

/* Thread-local message for the most recent failure. */
const char *qzk_last_error(void);
const char *qzk_status_name(qzk_status st);

void qzk_string_free(char *s);
void qzk_series_free(qzk_series *s);
void qzk_elem_free(qzk_elem *e);

/* ---- special values ---- */

qzk_status qzk_bracket(const int *s, size_t len, int order, qzk_series **out);
qzk_status qzk_bibracket(const int *s, const int *r, size_t len, int order,
                         qzk_series **out);
qzk_status qzk_zvalue(const int *s, size_t len, int order, qzk_series **out);
qzk_status qzk_eisenstein(int weight, int order, qzk_series **out);

int qzk_series_order(const qzk_series *s);
/* Coefficient of q^k as a rational string. */
qzk_status qzk_series_coeff(const qzk_series *s, int k, char **out);
qzk_status qzk_series_json(const qzk_series *s, char **out);
qzk_status qzk_series_text(const qzk_series *s, char **out);

/* ---- product traces ---- */

/* trace: "lemma31", "bo", "thm32:<r>" or "pn:<N>". */
qzk_status qzk_trace_build(const char *trace, const qzk_options *opts,
                           qzk_elem **out);
qzk_status qzk_elem_json(const qzk_elem *e, char **out);
/* Coefficient of a formal monomial such as "z^2*w"; the result maps
 * Laurent keys to q-series, in JSON. */
qzk_status qzk_elem_coeff_json(const qzk_elem *e, const char *monomial,
                               char **out);
qzk_status qzk_elem_y0(const qzk_elem *e, qzk_elem **out);

/* ---- reduction of constrained lattice sums ---- */

/* spec_json follows the documented SumSpec schema. The report carries
 * the bi-bracket combination and an evaluation certificate at
 * certify_order (default 15). */
qzk_status qzk_reduce(const char *spec_json, int certify_order,
                      const qzk_options *opts, char **report_json);

/* ---- verification and exploration ---- */

/* theorem: "lemma31", "bo", "thm32:<r>", "thm45", "thm54:<N>". passed
 * receives 1/0. */
qzk_status qzk_verify(const char *theorem, const qzk_options *opts,
                      char **report_json, int *passed);

qzk_status qzk_relations(const char *family, int max_weight, int order,
                         char **report_json);

qzk_status qzk_selftest(char **report_json, int *passed);

#ifdef __cplusplus
}
#endif

#endif /* QZK_H */
