#ifndef PATROL_H
#define PATROL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PatrolStatus {
  PATROL_STATUS_OK = 0,
  PATROL_STATUS_NULL_ARGUMENT = 1,
  PATROL_STATUS_INVALID_UTF8 = 2,
  PATROL_STATUS_PARSE = 3,
  PATROL_STATUS_INVALID_INSTANCE = 4,
  PATROL_STATUS_INVALID_CONFIG = 5,
  PATROL_STATUS_TOO_LARGE = 6,
  PATROL_STATUS_INTERNAL = 7,
  PATROL_STATUS_PANIC = 8,
} PatrolStatus;

typedef enum PatrolAlgorithm {
  PATROL_ALGORITHM_APPROX = 0,
  PATROL_ALGORITHM_GREEDY = 1,
  PATROL_ALGORITHM_ORIENTEERING_GREEDY = 2,
} PatrolAlgorithm;

// Opaque instance handle.
typedef struct PatrolInstance PatrolInstance;

// Opaque solution handle.
typedef struct PatrolSolution PatrolSolution;

// Tuning for the greedy solvers. `m_num / m_den` weights vertices already
// on the walk being built and must lie in (0, 1].
typedef struct PatrolGreedyConfig {
  int64_t m_num;
  int64_t m_den;
  size_t restarts;
  uint64_t seed;
} PatrolGreedyConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next call into this library on the same thread.
const char *patrol_last_error(void);

// Library version as a static NUL-terminated string.
const char *patrol_version(void);

// Default greedy settings.
struct PatrolGreedyConfig patrol_greedy_config_default(void);

// Parses and validates an instance. Non-metric input is rejected with
// `PATROL_STATUS_INVALID_INSTANCE`.
//
// # Safety
// `json` must be NULL or a NUL-terminated string; `out` must be NULL or
// writable.
enum PatrolStatus patrol_instance_from_json(const char *json, struct PatrolInstance **out);

// # Safety
// `inst` must be NULL or come from [`patrol_instance_from_json`] and not
// have been freed.
void patrol_instance_free(struct PatrolInstance *inst);

// Number of vertices, or 0 for NULL.
//
// # Safety
// `inst` must be NULL or a live instance handle.
size_t patrol_instance_vertex_count(const struct PatrolInstance *inst);

// Serialises an instance; release the result with [`patrol_string_free`].
//
// # Safety
// `inst` must be a live instance handle; `out` must be writable.
enum PatrolStatus patrol_instance_to_json(const struct PatrolInstance *inst, char **out);

// Runs a solver. `algorithm` is a [`PatrolAlgorithm`] value; `config` may
// be NULL for defaults and is ignored by the approximation algorithm.
//
// # Safety
// `inst` must be a live instance handle, `config` NULL or readable, `out`
// writable.
enum PatrolStatus patrol_solve(const struct PatrolInstance *inst,
                               uint32_t algorithm,
                               const struct PatrolGreedyConfig *config,
                               struct PatrolSolution **out);

// Parses a solution. Vertex indices are checked later, against an instance.
//
// # Safety
// `json` must be NULL or NUL-terminated; `out` must be writable.
enum PatrolStatus patrol_solution_from_json(const char *json, struct PatrolSolution **out);

// # Safety
// `sol` must be a live solution handle; `out` must be writable.
enum PatrolStatus patrol_solution_to_json(const struct PatrolSolution *sol, char **out);

// Number of robots (walks), or 0 for NULL.
//
// # Safety
// `sol` must be NULL or a live solution handle.
size_t patrol_solution_robot_count(const struct PatrolSolution *sol);

// # Safety
// `sol` must be NULL or a handle not yet freed.
void patrol_solution_free(struct PatrolSolution *sol);

// Evaluates `sol` on `inst`. Writes the verdict to `feasible` and, when
// `report` is not NULL, a JSON object with per-vertex `latency`,
// `constraint` and `feasible` arrays plus the `overall` verdict.
//
// # Safety
// Handles must be live; `feasible` writable; `report` NULL or writable.
enum PatrolStatus patrol_verify(const struct PatrolInstance *inst,
                                const struct PatrolSolution *sol,
                                bool *feasible,
                                char **report);

// Fewest robots for a tiny instance by exhaustive search over the time grid,
// bounded by `horizon` steps. Fails with `PATROL_STATUS_TOO_LARGE` beyond the
// search limits.
//
// # Safety
// `inst` must be a live handle; `out` writable.
enum PatrolStatus patrol_exact_min_robots(const struct PatrolInstance *inst,
                                          uint32_t horizon,
                                          size_t *out);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a string from this library not yet freed.
void patrol_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATROL_H */
