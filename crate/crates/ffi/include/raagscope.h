#ifndef RAAGSCOPE_H
#define RAAGSCOPE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RaagStatus {
  RAAG_OK = 0,
  RAAG_NULL_POINTER = 1,
  RAAG_INVALID_UTF8 = 2,
  RAAG_PARSE_ERROR = 3,
  RAAG_WORD_ERROR = 4,
  RAAG_SOUNDNESS_ERROR = 5,
  RAAG_PANIC = 6,
} RaagStatus;

typedef enum RaagVerdict {
  RAAG_NO_SURFACE_SUBGROUP = 0,
  RAAG_HAS_SURFACE_SUBGROUP = 1,
  RAAG_UNKNOWN = 2,
} RaagVerdict;

/**
 * Opaque graph handle.
 */
typedef struct RaagGraph RaagGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses graph6 or edgelist text (auto-detected) into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RaagStatus raag_graph_parse(const char *text, struct RaagGraph **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must come from [`raag_graph_parse`] and not be freed twice.
 */
void raag_graph_free(struct RaagGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum RaagStatus raag_graph_vertex_count(const struct RaagGraph *g, uintptr_t *out);

/**
 * Writes the graph6 encoding to `*out`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum RaagStatus raag_graph_to_graph6(const struct RaagGraph *g, char **out);

/**
 * Classifies with the default settings and the given prover budget
 * (0 means the default). `json_out` may be null; otherwise it receives the
 * full JSON report.
 *
 * # Safety
 * `g` must be a live handle, `verdict` a valid pointer, `json_out` null or valid.
 */
enum RaagStatus raag_classify(const struct RaagGraph *g,
                              uintptr_t budget,
                              enum RaagVerdict *verdict,
                              char **json_out);

/**
 * Decides whether `word` is trivial in the RAAG on `g`.
 *
 * # Safety
 * `g` must be a live handle, `word` a NUL-terminated string, `out` valid.
 */
enum RaagStatus raag_word_is_trivial(const struct RaagGraph *g, const char *word, bool *out);

/**
 * Writes the normal form of `word` to `*out`.
 *
 * # Safety
 * `g` must be a live handle, `word` a NUL-terminated string, `out` valid.
 */
enum RaagStatus raag_word_normal_form(const struct RaagGraph *g, const char *word, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void raag_string_free(char *s);

/**
 * Library version as a static NUL-terminated string.
 */
const char *raag_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAAGSCOPE_H */
