/* C interface to the penalty-calibration library.
 *
 * All functions return a penmin_status (PENMIN_OK on success); results come
 * back through out-parameters. Objects are opaque handles owned by the
 * caller and released with the matching _free function. Strings returned
 * through char** are heap-allocated and released with penmin_string_free.
 * penmin_last_error_detail() returns a thread-local message for the most
 * recent failure on the calling thread.
 */
#ifndef PENMIN_H
#define PENMIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PENMIN_API __declspec(dllexport)
#else
#define PENMIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int penmin_status;

enum {
    PENMIN_OK = 0,
    PENMIN_ERR_IO = 1,
    PENMIN_ERR_PARSE = 2,
    PENMIN_ERR_BAD_ARGUMENT = 3,
    PENMIN_ERR_EMPTY_COLLECTION = 10,
    PENMIN_ERR_NON_FINITE_FIELD = 11,
    PENMIN_ERR_DUPLICATE_ID = 12,
    PENMIN_ERR_NEGATIVE_C = 20,
    PENMIN_ERR_NO_JUMP = 21,
    PENMIN_ERR_THRESHOLD_UNREACHABLE = 22,
    PENMIN_ERR_UNBOUNDED_INTERVAL = 23,
    PENMIN_ERR_DEGENERATE_X = 30,
    PENMIN_ERR_TOO_FEW_POINTS = 31,
    PENMIN_ERR_TOO_FEW_DIMENSIONS = 32,
    PENMIN_ERR_NON_FINITE = 33,
    PENMIN_ERR_NEGATIVE_SIGMA2 = 40,
    PENMIN_ERR_FULL_DIMENSION = 41,
    PENMIN_ERR_FULL_DF = 42,
    PENMIN_ERR_BAD_DIMENSION = 50,
    PENMIN_ERR_WRONG_FAMILY = 51,
    PENMIN_ERR_SINGULAR_GRID = 52,
    PENMIN_ERR_BAD_RANGE = 60,
    PENMIN_ERR_ASYMMETRIC_MATRIX = 61,
    PENMIN_ERR_TOO_SHORT = 62,
    PENMIN_ERR_INTERNAL = 99
};

typedef struct penmin_collection penmin_collection;
typedef struct penmin_path penmin_path;

PENMIN_API uint32_t penmin_api_version(void);
PENMIN_API const char* penmin_status_name(penmin_status status);
PENMIN_API const char* penmin_last_error_detail(void);
PENMIN_API void penmin_string_free(char* s);

/* ---- collections ------------------------------------------------------ */

/* Builds a validated collection from parallel arrays of length count. */
PENMIN_API penmin_status penmin_collection_create(const int64_t* ids,
                                                  const double* empirical_risk,
                                                  const double* pen0, const double* pen1,
                                                  const double* complexity, size_t count,
                                                  penmin_collection** out);

/* Reads the CSV interchange format (header
 * "id,empirical_risk,pen0,pen1,complexity"). */
PENMIN_API penmin_status penmin_collection_from_csv(const char* filename,
                                                    penmin_collection** out);

PENMIN_API void penmin_collection_free(penmin_collection* collection);
PENMIN_API size_t penmin_collection_size(const penmin_collection* collection);
PENMIN_API int penmin_collection_has_negative_pen0(const penmin_collection* collection);

/* Order-smallest minimizer of empirical_risk + c * pen0 (exact scan). */
PENMIN_API penmin_status penmin_brute_force_argmin(const penmin_collection* collection, double c,
                                                   int64_t* id_out);

/* ---- penalized-argmin path -------------------------------------------- */

PENMIN_API penmin_status penmin_compute_path(const penmin_collection* collection,
                                             penmin_path** out);
PENMIN_API void penmin_path_free(penmin_path* path);
PENMIN_API size_t penmin_path_jump_count(const penmin_path* path);
PENMIN_API penmin_status penmin_path_evaluate(const penmin_path* path, double c,
                                              int64_t* id_out);

/* {"breakpoints":[0,...,"inf"],"models":[...]} */
PENMIN_API penmin_status penmin_path_to_json(const penmin_path* path, char** json_out);

/* ---- selection --------------------------------------------------------- */

/* method: maxjump|threshold|window|slope|capushe|median|consensus|mallows|
 * fpe|gcv. params_json (may be NULL) is an object with optional keys
 * n, Tn, eta, D0, pct, sigma2, overpen. Returns the SelectionOutcome JSON. */
PENMIN_API penmin_status penmin_select_json(const penmin_collection* collection,
                                            const char* method, const char* params_json,
                                            char** json_out);

/* ---- simulations ------------------------------------------------------- */

/* config_json keys: setting (easy|hard|kernel), n, sigma2, replicates, seed,
 * Tn, eta, D0, pct, Dm0, overpen, overpen_start/stop/step, kernel_alpha,
 * jobs. format: "json" or "text". */
PENMIN_API penmin_status penmin_simulate(const char* config_json, const char* format,
                                         char** out);

/* Overpenalization sweep as CSV "C,risk_ratio,se". */
PENMIN_API penmin_status penmin_sweep_csv(const char* config_json, char** csv_out);

/* One replicate's generated problem as the collection CSV, for standalone
 * calibration runs. */
PENMIN_API penmin_status penmin_replicate_collection_csv(const char* config_json,
                                                         uint64_t replicate_index,
                                                         char** csv_out);

/* Runs a benchmark target (table1|table3|table4|fig8), writes its artifact
 * files under out_dir, compares against the reference values file, and
 * returns a summary JSON with per-line pass/fail. */
PENMIN_API penmin_status penmin_reproduce(const char* target, const char* config_json,
                                          const char* reference_path, const char* out_dir,
                                          char** summary_json_out);

#ifdef __cplusplus
}
#endif

#endif /* PENMIN_H */
