/*
 * mzmesh C API: discretization meshes and polynomial-inequality experiments
 * on C^alpha graph domains.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return mz_status; on failure mz_last_error() carries a
 * human-readable message for the calling thread.
 */
#ifndef MZMESH_H
#define MZMESH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MZMESH_API __declspec(dllexport)
#else
#define MZMESH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mz_status {
    MZ_OK = 0,
    MZ_ERR_INVALID_ARGUMENT = 1, /* bad parameter or unknown id */
    MZ_ERR_INVALID_CONFIG = 2,   /* config JSON rejected */
    MZ_ERR_DOMAIN = 3,           /* geometry/membership violation */
    MZ_ERR_CONVERGENCE = 4,      /* iterative solve failed to converge */
    MZ_ERR_IO = 5,
    MZ_ERR_INTERNAL = 6
} mz_status;

typedef struct mz_domain_s mz_domain;
typedef struct mz_mesh_s mz_mesh;
typedef struct mz_report_s mz_report;

MZMESH_API const char* mz_version(void);

/* Thread-local message for the most recent failure; empty string if none. */
MZMESH_API const char* mz_last_error(void);

/* Frees strings returned as char* out-parameters. */
MZMESH_API void mz_string_free(char* s);

/* ---- domains --------------------------------------------------------- */

/* model_id: "quad", "alpha:<a>" (1 < a <= 2), "trig".
 * preset:   "mz", "bernstein", or "sharpness" (box/depth choices). */
MZMESH_API mz_status mz_domain_create(const char* model_id, int dim, const char* preset,
                                      mz_domain** out);
MZMESH_API void mz_domain_free(mz_domain* dom);

/* point has dim coordinates. region: 0 = G, 1 = G*. */
MZMESH_API mz_status mz_domain_contains(const mz_domain* dom, const double* point, int region,
                                        int* out);
/* g(x) - y + 1/n^2; the point must lie in G*. */
MZMESH_API mz_status mz_domain_delta_n(const mz_domain* dom, const double* point, int n,
                                       double* out);
MZMESH_API mz_status mz_domain_dist_to_boundary(const mz_domain* dom, const double* point,
                                                double* out);

/* ---- meshes ---------------------------------------------------------- */

/* node_policy: "center", "random", or "corner". */
MZMESH_API mz_status mz_mesh_build(const mz_domain* dom, int n, double epsilon, double c0,
                                   const char* node_policy, uint64_t seed, int force,
                                   mz_mesh** out);
MZMESH_API void mz_mesh_free(mz_mesh* mesh);

MZMESH_API mz_status mz_mesh_cell_count(const mz_mesh* mesh, size_t* out);
MZMESH_API mz_status mz_mesh_layer_count(const mz_mesh* mesh, int* out);
MZMESH_API mz_status mz_mesh_total_measure(const mz_mesh* mesh, double* out);

/* Cell containing the point (which must lie in G). layer is 1-based. */
MZMESH_API mz_status mz_mesh_locate(const mz_mesh* mesh, const double* point, int* layer,
                                    long* index);

/* Serializations; *out is malloc'd, release with mz_string_free. */
MZMESH_API mz_status mz_mesh_to_json(const mz_mesh* mesh, char** out);
MZMESH_API mz_status mz_mesh_to_csv(const mz_mesh* mesh, char** out);

/* ---- experiments ----------------------------------------------------- */

/* Runs one experiment described by a JSON config, e.g.
 *   {"command":"mz","domain":"alpha:1.5","d":2,"n":8,"p":2,
 *    "epsilon":0.25,"seed":7}
 * Commands: build-mesh, mz, bernstein, markov, sharpness, lemma73,
 * osc-check, steklov, sanity. Unknown keys are rejected. A failing verdict
 * still returns MZ_OK; inspect mz_report_passed. */
MZMESH_API mz_status mz_run_config(const char* config_json, mz_report** out);
MZMESH_API void mz_report_free(mz_report* report);

/* Validates a config and fills defaults (seed, n_list, threads, ...) without
 * running anything; *out is malloc'd JSON, release with mz_string_free. */
MZMESH_API mz_status mz_resolve_config(const char* config_json, char** out);

MZMESH_API int mz_report_passed(const mz_report* report); /* 1 pass, 0 fail */
/* Strings owned by the report; valid until mz_report_free. */
MZMESH_API const char* mz_report_json(const mz_report* report);
MZMESH_API const char* mz_report_summary_csv(const mz_report* report);
MZMESH_API const char* mz_report_verdict(const mz_report* report);
MZMESH_API double mz_report_wall_seconds(const mz_report* report);

#ifdef __cplusplus
}
#endif

#endif /* MZMESH_H */
