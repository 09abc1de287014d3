#ifndef COPS_H
#define COPS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum CopsStatus {
  COPS_STATUS_OK = 0,
  COPS_STATUS_NULL_POINTER = 1,
  COPS_STATUS_INVALID_ARGUMENT = 2,
  COPS_STATUS_INVALID_GRAPH = 3,
  COPS_STATUS_IO = 4,
  COPS_STATUS_STATE_LIMIT = 5,
  COPS_STATUS_COP_LIMIT = 6,
  COPS_STATUS_DISCONNECTED = 7,
  COPS_STATUS_NOT_ISOMETRIC = 8,
  COPS_STATUS_INTERNAL = 99,
} CopsStatus;

/*
 Opaque graph handle.
 */
typedef struct CopsGraph CopsGraph;

/*
 Opaque handle to a solved game.
 */
typedef struct CopsSolveResult CopsSolveResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 The pointer stays valid until the next call into the library.
 */
const char *cops_last_error(void);

/*
 Library version as a static string.
 */
const char *cops_version(void);

/*
 Build a graph on `n` vertices from `edge_count` pairs stored flat in
 `edges` (`2 * edge_count` entries).

 # Safety
 `edges` must point to `2 * edge_count` readable values; `out` must be writable.
 */
enum CopsStatus cops_graph_from_edges(size_t n,
                                      const size_t *edges,
                                      size_t edge_count,
                                      struct CopsGraph **out);

/*
 Generate a named family, e.g. `"petersen"`, `"grid:4:4"`, `"gnp:30:0.2:7"`.

 # Safety
 `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum CopsStatus cops_graph_generate(const char *spec, struct CopsGraph **out);

/*
 Parse edge-list text: vertex count on the first line, then `u v` pairs.

 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CopsStatus cops_graph_parse(const char *text, struct CopsGraph **out);

/*
 Read an edge-list file.

 # Safety
 `path` must be a NUL-terminated string; `out` must be writable.
 */
enum CopsStatus cops_graph_read_file(const char *path, struct CopsGraph **out);

/*
 # Safety
 `g` must come from this library and not be freed twice. Null is ignored.
 */
void cops_graph_free(struct CopsGraph *g);

/*
 Vertex count, or 0 for a null handle.

 # Safety
 `g` must be null or a live graph handle.
 */
size_t cops_graph_vertex_count(const struct CopsGraph *g);

/*
 Edge count, or 0 for a null handle.

 # Safety
 `g` must be null or a live graph handle.
 */
size_t cops_graph_edge_count(const struct CopsGraph *g);

/*
 Edge-list text of the graph.

 # Safety
 `g` must be a live graph handle; `out` must be writable.
 */
enum CopsStatus cops_graph_to_text(const struct CopsGraph *g, char **out);

/*
 Cop number, summed over components. `state_limit = 0` uses the default
 limit; `max_k = 0` means no cap on the cop count.

 # Safety
 `g` must be a live graph handle; `out` must be writable.
 */
enum CopsStatus cops_cop_number(const struct CopsGraph *g,
                                uint64_t state_limit,
                                size_t max_k,
                                size_t *out);

/*
 Solve the game with `k` cops on a connected graph.

 # Safety
 `g` must be a live graph handle; `out` must be writable.
 */
enum CopsStatus cops_solve(const struct CopsGraph *g,
                           size_t k,
                           uint64_t state_limit,
                           struct CopsSolveResult **out);

/*
 # Safety
 `r` must come from [`cops_solve`] and not be freed twice. Null is ignored.
 */
void cops_solve_result_free(struct CopsSolveResult *r);

/*
 Whether the cops win; false for a null handle.

 # Safety
 `r` must be null or a live result handle.
 */
bool cops_solve_result_cop_win(const struct CopsSolveResult *r);

/*
 Game value from the best cop placement, or -1 when the robber wins.

 # Safety
 `r` must be a live result handle; `out` must be writable.
 */
enum CopsStatus cops_solve_result_value(const struct CopsSolveResult *r, int64_t *out);

/*
 Capture time of one state, or -1 when the robber escapes forever.

 # Safety
 `r` must be a live result handle, `cops` must point to `k` values and
 `out` must be writable.
 */
enum CopsStatus cops_solve_result_capture_time(const struct CopsSolveResult *r,
                                               const size_t *cops,
                                               size_t k,
                                               size_t robber,
                                               bool robber_to_move,
                                               int64_t *out);

/*
 Bound report as JSON. A negative `genus` means unknown.

 # Safety
 `g` must be a live graph handle; `out` must be writable.
 */
enum CopsStatus cops_bounds_json(const struct CopsGraph *g, int64_t genus, char **out);

/*
 Run the shadow guard on `path` against a random-walk robber and return
 the verdict as JSON.

 # Safety
 `g` must be a live graph handle, `path` must point to `path_len` values
 and `out` must be writable.
 */
enum CopsStatus cops_guard_json(const struct CopsGraph *g,
                                const size_t *path,
                                size_t path_len,
                                size_t trials,
                                uint64_t seed,
                                char **out);

/*
 # Safety
 `s` must come from this library and not be freed twice. Null is ignored.
 */
void cops_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COPS_H */
