/* cubetop — exact connect/separate analysis on subdivided unit cubes.
 *
 * C interface to the analysis core: opaque handles for parsed objects,
 * integer status codes, and JSON strings for structured inputs, reports,
 * and witnesses. Returned strings are heap-allocated; release them with
 * ct_string_free. Error details for the last failing call on the current
 * thread are available via ct_last_error.
 */
#ifndef CUBETOP_CUBETOP_H
#define CUBETOP_CUBETOP_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CUBETOP_API __declspec(dllexport)
#elif defined(__GNUC__)
#define CUBETOP_API __attribute__((visibility("default")))
#else
#define CUBETOP_API
#endif

typedef enum ct_status {
  CT_OK = 0,
  CT_ERROR_USAGE = 1,     /* invalid arguments or malformed input */
  CT_ERROR_PARSE = 2,     /* unreadable input file/JSON */
  CT_ERROR_GUARD = 3,     /* enumeration or lattice size guard exceeded */
  CT_ERROR_SOUNDNESS = 4, /* internal certificate check failed; report a bug */
  CT_ERROR_INTERNAL = 5
} ct_status;

typedef struct ct_cellset ct_cellset;
typedef struct ct_field ct_field;

CUBETOP_API const char* ct_version(void);

/* Message for the most recent failure on this thread; empty when none. */
CUBETOP_API const char* ct_last_error(void);

CUBETOP_API void ct_string_free(char* s);

/* ---- cell sets ------------------------------------------------------ */

/* JSON: {"n":2,"k":3,"cells":[[1,2],[2,2],[3,2]]}; indices are 1-based. */
CUBETOP_API ct_status ct_cellset_parse(const char* json, ct_cellset** out);
CUBETOP_API void ct_cellset_free(ct_cellset* s);

/* Chain from {x_axis=0} to {x_axis=1} through the set under min_dim
 * adjacency. *present is 0/1; the chain JSON is filled when present and
 * chain_json is non-NULL. */
CUBETOP_API ct_status ct_cellset_connects(const ct_cellset* s, int axis, int min_dim,
                                          int* present, char** chain_json);

/* Separation certificate for the axis; same output convention. */
CUBETOP_API ct_status ct_cellset_separates(const ct_cellset* s, int axis, int* present,
                                           char** certificate_json);

/* ---- scalar fields --------------------------------------------------- */

/* JSON: {"type":"vertex","n":..,"k":..,"values":[..]} with row-major
 * samples (axis 1 fastest), or {"type":"expr","n":..,"expr":{..}}. */
CUBETOP_API ct_status ct_field_parse(const char* json, ct_field** out);
CUBETOP_API void ct_field_free(ct_field* f);

CUBETOP_API ct_status ct_field_eval(const ct_field* f, const double* x, int n, double* value);

/* Certified level-set bracketing across a grid schedule. Options JSON
 * (all fields optional): {"axes":[1,2],"k_schedule":[16,32],"dp":0.01,
 * "jobs":0}. The report lists certified-in/out intervals per axis per
 * grid. */
CUBETOP_API ct_status ct_analyze(const ct_field* f, const char* options_json, char** report);

/* ---- commands -------------------------------------------------------- */

/* Labeling JSON: {"n":..,"k":..,"labels":[..]} with colors in [1, n].
 * Finds the smallest color whose class spans its axis, with the witness
 * chain; generalized raises link thresholds to color-1. */
CUBETOP_API ct_status ct_witness(const char* labeling_json, int generalized, char** report);

/* Sweeps every instance (trials == 0, guarded by max_enum; pass 0 for the
 * default guard of 10^7) or seeded random instances (trials > 0) of the
 * given mode: "plain", "generalized", "lebesgue", or "level". */
CUBETOP_API ct_status ct_verify(int n, int k, const char* mode, long long max_enum,
                                unsigned long long seed, long long trials, int jobs,
                                char** report);

/* Integer field JSON: {"n":..,"k":..,"values":[..]} with values differing
 * by at most 1 between intersecting cells. Returns the smallest level
 * whose cells span the axis, else the smallest level separating it. */
CUBETOP_API ct_status ct_level(const char* integer_field_json, int axis, char** report);

/* Prescription JSON: {"n":3,"A":[null,0.5,[0.2,0.8]],"B":[[0.3,0.7],
 * null,null]} — null empty, number a point, [lo,hi] an interval, all in
 * [0,1]. On success fills the synthesized field JSON and a build report;
 * on an admissibility violation fills only the report and returns
 * CT_ERROR_USAGE. */
CUBETOP_API ct_status ct_synthesize(const char* spec_json, char** field_json, char** report);

/* Cross-validates the fast connectivity engine against the face-lattice
 * reference; exhaustive over all cell sets when exhaustive != 0, else
 * seeded random trials. */
CUBETOP_API ct_status ct_oracle_check(int n, int k, int exhaustive, unsigned long long seed,
                                      long long trials, char** report);

#ifdef __cplusplus
}
#endif

#endif /* CUBETOP_CUBETOP_H */
