/* C interface to the cocycle toolkit. All functions return a status code:
 *   0 = success / property holds
 *   1 = domain failure (validation found violations, check failed, ...)
 *   2 = usage error (parse errors, wrong arguments, unsupported input)
 * Every call fills *out_json with a heap-allocated JSON document (on status 2
 * it is {"error": "..."}); release it with epc_string_free. System handles
 * are opaque and released with epc_system_free.
 */
#ifndef EPCO_CAPI_H
#define EPCO_CAPI_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct epc_system epc_system;

/* Parse a TOML system definition (explicit sections or [construct]). */
int epc_system_from_toml(const char* toml_text, epc_system** out_system, char** out_json);
void epc_system_free(epc_system* sys);
void epc_string_free(char* s);

/* Emit the explicit TOML schema for a loaded system. Unlike the other calls,
 * on success *out_json holds the TOML text itself. */
int epc_system_to_toml(const epc_system* sys, char** out_json);

/* Graph-cocycle validation; strong != 0 checks the strong vertex condition. */
int epc_validate(const epc_system* sys, int strong, char** out_json);

/* Invariants: signature (abelian targets), orbits, and for builder-created
 * EPK systems the decomposition parameters. */
int epc_classify(const epc_system* sys, char** out_json);

/* EPK orbit decomposition with certified conjugacies (EPK systems only). */
int epc_decompose(const epc_system* sys, char** out_json);

/* Path extension up to max_length: validates the extended cocycle. */
int epc_extend(const epc_system* sys, int max_length, char** out_json);

/* Cohomology-conjugacy decision; bound limits the brute-force witness box.
 * Status 0: conjugate (witness included); 1: not conjugate or unknown. */
int epc_compare(const epc_system* a, const epc_system* b, long bound, char** out_json);

/* Normal form of a generator word ("p(v) s(e) s*(e) u(g)" tokens). */
int epc_normalize(const epc_system* sys, const char* expression, char** out_json);

/* Fock-oracle check of a generator word. */
int epc_fock_check(const epc_system* sys, const char* expression, int max_path_length,
                   long ball_radius, int jobs, char** out_json);

/* Relation check of a JSON matrix family; mode "toeplitz" or "ck". */
int epc_check_matrices(const epc_system* sys, const char* family_json, const char* mode,
                       double tol, char** out_json);

/* Seeded axiom/oracle self-test suite on the system. */
int epc_selftest(const epc_system* sys, long ball_radius, int trials, unsigned seed,
                 char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* EPCO_CAPI_H */
