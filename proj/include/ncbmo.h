/* C interface to the ncbmo verification library.
 *
 * All entry points return an error code:
 *   0 ok, 1 check failed, 2 invalid input, 3 internal error.
 * Results are returned through an opaque handle carrying a JSON report.
 */
#ifndef NCBMO_H
#define NCBMO_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ncbmo_result ncbmo_result;

const char* ncbmo_version(void);

/* Most recent error message on this thread (empty string if none). */
const char* ncbmo_last_error(void);

/* config_json: {"suite": name, "seed": ..., "samples": ..., "n": ...,
 * "dim": ..., "t_grid": {"lo","hi","count"}}; unknown fields ignored. */
int ncbmo_run_suite(const char* config_json, ncbmo_result** out);

/* matrix_json: {"n", "re", "im"}; semigroup_json: semigroup spec;
 * side: "column" | "row" | "max". */
int ncbmo_bmo(const char* matrix_json, const char* semigroup_json,
              const char* side, ncbmo_result** out);

/* op: "trace" | "adjoint" | "heat" | "intertwine" | "gnsnorm";
 * series_json: twisted series; arg: t or box size depending on op. */
int ncbmo_qtorus(const char* op, const char* series_json, double arg,
                 ncbmo_result** out);

/* group: builtin name (z2..z64, s3, d4, q8) or a JSON table;
 * kernel_json: array of [re, im] pairs, one per group element. */
int ncbmo_transfer(const char* group, const char* kernel_json,
                   ncbmo_result** out);

/* JSON text of a result; owned by the handle. */
const char* ncbmo_result_json(const ncbmo_result* r);
/* 0 if every check in the result passed, 1 otherwise. */
int ncbmo_result_status(const ncbmo_result* r);
void ncbmo_result_free(ncbmo_result* r);

#ifdef __cplusplus
}
#endif

#endif
