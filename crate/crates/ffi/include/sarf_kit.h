#ifndef SARF_KIT_H
#define SARF_KIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum SarfStatus {
  SARF_STATUS_OK = 0,
  SARF_STATUS_NULL_POINTER = 1,
  SARF_STATUS_INVALID_UTF8 = 2,
  SARF_STATUS_PARSE = 3,
  SARF_STATUS_DOMAIN = 4,
  SARF_STATUS_PANIC = 5,
} SarfStatus;

typedef enum SarfAlgorithm {
  SARF_ALGORITHM_SARF = 0,
  SARF_ALGORITHM_NEWMAN = 1,
} SarfAlgorithm;

/**
 * Output of one clustering run.
 */
typedef struct SarfClustering SarfClustering;

typedef struct SarfDecomposition SarfDecomposition;

/**
 * A member-level or module-level dependency graph.
 */
typedef struct SarfGraph SarfGraph;

/**
 * Module-to-package assignment.
 */
typedef struct SarfPackages SarfPackages;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *sarf_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sarf_string_free(char *s);

/**
 * Parses a member graph (five tab-separated columns per line).
 *
 * # Safety
 * `tsv` must be a NUL-terminated string; `out` must be writable.
 */
enum SarfStatus sarf_graph_parse_members(const char *tsv, struct SarfGraph **out);

/**
 * Parses a module graph (two or three tab-separated columns per line).
 *
 * # Safety
 * `tsv` must be a NUL-terminated string; `out` must be writable.
 */
enum SarfStatus sarf_graph_parse_modules(const char *tsv, struct SarfGraph **out);

/**
 * # Safety
 * `g` must be null or a graph handle not yet freed.
 */
void sarf_graph_free(struct SarfGraph *g);

/**
 * Clusters `g`. `separator` is the Unicode scalar separating outer and
 * nested module names (`'$'` by default in the CLI).
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum SarfStatus sarf_cluster(const struct SarfGraph *g,
                             enum SarfAlgorithm algorithm,
                             uint32_t separator,
                             struct SarfClustering **out);

/**
 * # Safety
 * `c` must be a live clustering handle; `out` must be writable.
 */
enum SarfStatus sarf_clustering_modularity(const struct SarfClustering *c, double *out);

/**
 * Copies the flat decomposition into a new handle.
 *
 * # Safety
 * `c` must be a live clustering handle; `out` must be writable.
 */
enum SarfStatus sarf_clustering_decomposition(const struct SarfClustering *c,
                                              struct SarfDecomposition **out);

/**
 * # Safety
 * `c` must be a live clustering handle; `out` must be writable. The string
 * is released with [`sarf_string_free`].
 */
enum SarfStatus sarf_clustering_dendrogram_json(const struct SarfClustering *c, char **out);

/**
 * Weighted module graph that was clustered, as module-graph TSV.
 *
 * # Safety
 * `c` must be a live clustering handle; `out` must be writable.
 */
enum SarfStatus sarf_clustering_weights_tsv(const struct SarfClustering *c, char **out);

/**
 * # Safety
 * `c` must be null or a clustering handle not yet freed.
 */
void sarf_clustering_free(struct SarfClustering *c);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SarfStatus sarf_decomposition_from_json(const char *json, struct SarfDecomposition **out);

/**
 * # Safety
 * `d` must be a live decomposition handle; `out` must be writable.
 */
enum SarfStatus sarf_decomposition_to_json(const struct SarfDecomposition *d, char **out);

/**
 * # Safety
 * `d` must be a live decomposition handle; `out` must be writable.
 */
enum SarfStatus sarf_decomposition_cluster_count(const struct SarfDecomposition *d, uintptr_t *out);

/**
 * # Safety
 * `d` must be a live decomposition handle; `out` must be writable.
 */
enum SarfStatus sarf_decomposition_module_count(const struct SarfDecomposition *d, uintptr_t *out);

/**
 * # Safety
 * `d` must be null or a decomposition handle not yet freed.
 */
void sarf_decomposition_free(struct SarfDecomposition *d);

/**
 * Move-and-join operations turning `c` into `a`.
 *
 * # Safety
 * `c` and `a` must be live decomposition handles; `out` must be writable.
 */
enum SarfStatus sarf_mno(const struct SarfDecomposition *c,
                         const struct SarfDecomposition *a,
                         uintptr_t *out);

/**
 * # Safety
 * `c` and `a` must be live decomposition handles; `out` must be writable.
 */
enum SarfStatus sarf_mojo(const struct SarfDecomposition *c,
                          const struct SarfDecomposition *a,
                          uintptr_t *out);

/**
 * # Safety
 * `c` and `a` must be live decomposition handles; `out` must be writable.
 */
enum SarfStatus sarf_mojosim(const struct SarfDecomposition *c,
                             const struct SarfDecomposition *a,
                             double *out);

/**
 * MoJoFM of `c` against reference `a`, in percent.
 *
 * # Safety
 * `c` and `a` must be live decomposition handles; `out` must be writable.
 */
enum SarfStatus sarf_mojofm(const struct SarfDecomposition *c,
                            const struct SarfDecomposition *a,
                            double *out);

/**
 * # Safety
 * `d` must be a live decomposition handle; `out` must be writable.
 */
enum SarfStatus sarf_ned(const struct SarfDecomposition *d, double *out);

/**
 * Parses a package TSV (module, package path).
 *
 * # Safety
 * `tsv` must be a NUL-terminated string; `out` must be writable.
 */
enum SarfStatus sarf_packages_parse(const char *tsv, struct SarfPackages **out);

/**
 * # Safety
 * `p` must be null or a package handle not yet freed.
 */
void sarf_packages_free(struct SarfPackages *p);

/**
 * Reference decomposition from package structure; clusters of at most
 * `threshold` modules are folded into their parent package.
 *
 * # Safety
 * `p` must be a live package handle; `out` must be writable.
 */
enum SarfStatus sarf_auth_decomposition(const struct SarfPackages *p,
                                        uintptr_t threshold,
                                        struct SarfDecomposition **out);

/**
 * Percentage of modules in the most populous package.
 *
 * # Safety
 * `p` must be a live package handle; `out` must be writable.
 */
enum SarfStatus sarf_occupancy(const struct SarfPackages *p, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SARF_KIT_H */
