#ifndef LEXPATH_H
#define LEXPATH_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum LexpathStatus {
  LEXPATH_STATUS_OK = 0,
  LEXPATH_STATUS_NULL_POINTER = 1,
  LEXPATH_STATUS_INVALID_INPUT = 2,
  LEXPATH_STATUS_NO_PATH = 3,
  LEXPATH_STATUS_CAP_EXCEEDED = 4,
  LEXPATH_STATUS_LENGTH_MISMATCH = 5,
  LEXPATH_STATUS_INTERNAL = 6,
} LexpathStatus;

typedef enum LexpathScheme {
  LEXPATH_SCHEME_EARLIEST = 0,
  LEXPATH_SCHEME_LATEST = 1,
} LexpathScheme;

typedef enum LexpathXfcMethod {
  LEXPATH_XFC_METHOD_PAPER = 0,
  LEXPATH_XFC_METHOD_CORRECT = 1,
} LexpathXfcMethod;

/**
 * Opaque parsed network.
 */
typedef struct LexpathNetwork LexpathNetwork;

/**
 * Opaque path result.
 */
typedef struct LexpathPath LexpathPath;

typedef struct LexpathReliability {
  double probability;
  uint64_t vectors_evaluated;
  uint64_t vectors_pruned;
} LexpathReliability;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. Borrowed
 * until the next failing call on the same thread.
 */
const char *lexpath_last_error(void);

/**
 * Static version string of the library.
 */
const char *lexpath_version(void);

/**
 * Parses edge-list text into a new network handle.
 */
enum LexpathStatus lexpath_network_parse(const char *text, struct LexpathNetwork **out);

void lexpath_network_free(struct LexpathNetwork *net);

uintptr_t lexpath_network_node_count(const struct LexpathNetwork *net);

uintptr_t lexpath_network_arc_count(const struct LexpathNetwork *net);

uintptr_t lexpath_network_source(const struct LexpathNetwork *net);

uintptr_t lexpath_network_sink(const struct LexpathNetwork *net);

/**
 * Source-sink connectivity of the subgraph selected by `bits`, a string of
 * '0'/'1' with arc 1 first.
 */
enum LexpathStatus lexpath_is_st_connected(const struct LexpathNetwork *net,
                                           const char *bits,
                                           bool *out);

/**
 * Runs Dijkstra under `scheme`. Returns `LEXPATH_STATUS_NO_PATH` and leaves
 * `*out` null when source and sink are not connected.
 */
enum LexpathStatus lexpath_find_path(const struct LexpathNetwork *net,
                                     enum LexpathScheme scheme,
                                     struct LexpathPath **out);

void lexpath_path_free(struct LexpathPath *path);

uintptr_t lexpath_path_node_count(const struct LexpathPath *path);

/**
 * Copies up to `len` node indices into `buf`; returns the number copied.
 */
uintptr_t lexpath_path_nodes(const struct LexpathPath *path, uintptr_t *buf, uintptr_t len);

/**
 * Copies up to `len` one-based arc indices into `buf`; returns the number copied.
 */
uintptr_t lexpath_path_arcs(const struct LexpathPath *path, uintptr_t *buf, uintptr_t len);

/**
 * Indicator vector as a '0'/'1' string, arc 1 first. Borrowed from `path`.
 */
const char *lexpath_path_vector(const struct LexpathPath *path);

/**
 * Exact path weight in decimal. Borrowed from `path`.
 */
const char *lexpath_path_weight_decimal(const struct LexpathPath *path);

/**
 * First-connected-vector search. On success `*out` holds a new string to be
 * released with [`lexpath_string_free`].
 */
enum LexpathStatus lexpath_xfc(const struct LexpathNetwork *net,
                               enum LexpathXfcMethod method,
                               char **out);

/**
 * Exact two-terminal reliability. `probs` holds one working probability per
 * arc; pass null to use the probabilities from the parsed file.
 */
enum LexpathStatus lexpath_reliability(const struct LexpathNetwork *net,
                                       const double *probs,
                                       uintptr_t len,
                                       bool prune,
                                       bool force,
                                       struct LexpathReliability *out);

void lexpath_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEXPATH_H */
