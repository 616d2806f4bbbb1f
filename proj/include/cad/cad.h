#ifndef CAD_CAD_H
#define CAD_CAD_H

/* C interface to the CAD engine. Handles are opaque; every function returning
   cad_status leaves a message for cad_last_error() on failure (per thread).
   Strings returned through char** are owned by the caller: free with cad_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cad_status {
  CAD_OK = 0,
  CAD_ERROR = 1,
  CAD_ERR_PARSE = 2,
  CAD_ERR_WELL_ORIENTED = 3,
  CAD_ERR_CAP = 4,
  CAD_ERR_PRIMITIVITY = 5,
  CAD_ERR_INVALID = 6
} cad_status;

typedef enum cad_mode {
  CAD_MODE_SI = 0,     /* sign-invariant, no ECs */
  CAD_MODE_EC_RES = 1, /* ECs found automatically, propagated by resultants */
  CAD_MODE_EC_GB = 2   /* ECs found automatically, propagated by Groebner elimination */
} cad_mode;

typedef struct cad_formula cad_formula;
typedef struct cad_tree cad_tree;

const char* cad_version(void);
const char* cad_last_error(void);
void cad_string_free(char* s);

/* Mode names "si", "ec-res", "ec-gb". */
cad_status cad_mode_parse(const char* name, cad_mode* out);

/* `order` is a comma-separated list, lowest variable first; NULL or "" orders
   variables by first appearance. */
cad_status cad_formula_parse(const char* text, const char* order, cad_formula** out);
void cad_formula_free(cad_formula* f);
cad_status cad_formula_to_string(const cad_formula* f, char** out);
cad_status cad_formula_order(const cad_formula* f, char** out);

/* cell_cap 0 means the default (10^6). */
cad_status cad_build(const cad_formula* f, const char* order, cad_mode mode, size_t cell_cap, cad_tree** out);
/* Designated equational constraints, ';'-separated, at most one per main variable.
   An imprimitive one fails with CAD_ERR_PRIMITIVITY. */
cad_status cad_build_designated(const cad_formula* f, const char* order, const char* ecs, size_t cell_cap,
                                cad_tree** out);
void cad_tree_free(cad_tree* t);
/* per_level may be NULL; otherwise up to per_level_len entries are written. */
cad_status cad_tree_count(const cad_tree* t, size_t* total, size_t* per_level, size_t per_level_len, size_t* depth,
                          int* ell);
cad_status cad_tree_json(const cad_tree* t, char** out);
cad_status cad_tree_plan_json(const cad_tree* t, char** out);
/* Truth of the top-level cell containing a rational point ("1/2" etc.); -1 when unassigned. */
cad_status cad_tree_truth_at(const cad_tree* t, const char* const* coords, size_t n, int* truth);

cad_status cad_decide(const cad_formula* f, const char* order, cad_mode mode, size_t cell_cap, int* value,
                      size_t* cells);

/* Nested doubly-exponential family; form is nested, prenex, negated, cnf or product. */
cad_status cad_dh_generate(unsigned depth, const char* f, const char* form, cad_formula** out);
cad_status cad_primitivity_report(const cad_formula* f, const char* order, char** out, size_t* imprimitive);
cad_status cad_bound_eq1(unsigned n, unsigned m, unsigned d, char** out);
/* CSV report over every *.cad file of corpus_dir; modes is a comma-separated list. */
cad_status cad_bench_run(const char* corpus_dir, const char* modes, size_t cell_cap, char** csv);
/* Reduced Groebner basis of newline- or semicolon-separated generators, its dimension
   and the elimination ideals onto each proper prefix of `vars`. order is lex or grevlex. */
cad_status cad_gb(const char* order, const char* vars, const char* gens, char** out);

#ifdef __cplusplus
}
#endif

#endif
