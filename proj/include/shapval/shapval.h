#ifndef SHAPVAL_H
#define SHAPVAL_H

/* shapval: data valuation via exact and sampled Shapley values.
 *
 * All functions return a status code; on failure, shapval_last_error() holds
 * a message for the calling thread. Buffers handed out by the library are
 * released with shapval_free(). Game handles are created and destroyed
 * explicitly and may be shared across threads once created.
 */

#include <stddef.h>
#include <stdint.h>

#ifndef SHAPVAL_API
#if defined(__GNUC__)
#define SHAPVAL_API __attribute__((visibility("default")))
#else
#define SHAPVAL_API
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum shapval_status {
  SHAPVAL_OK = 0,
  SHAPVAL_ERROR_INVALID_ARGUMENT = 1,
  SHAPVAL_ERROR_DATA = 2,
  SHAPVAL_ERROR_SIZE_CAP = 3,
  SHAPVAL_ERROR_INTERNAL = 4
} shapval_status;

typedef struct shapval_game shapval_game;

/* Library version, static storage. */
SHAPVAL_API const char* shapval_version(void);

/* Short name of a status code, static storage. */
SHAPVAL_API const char* shapval_status_name(shapval_status status);

/* Message of the last failure on this thread, static storage; empty after a
 * success. */
SHAPVAL_API const char* shapval_last_error(void);

/* Releases a buffer returned by this library. NULL is fine. */
SHAPVAL_API void shapval_free(void* ptr);

/* Creates a synthetic game from a JSON spec, for example
 *   {"kind":"glove","left":1,"right":2}
 *   {"kind":"additive","weights":[1,2,3]}
 *   {"kind":"weighted-voting","weights":[4,2,1],"quota":5}
 *   {"kind":"symmetric-majority","players":5}
 *   {"kind":"random-bounded","players":8,"lo":0,"hi":1,"seed":7}
 */
SHAPVAL_API shapval_status shapval_game_create(const char* spec_json, shapval_game** out_game);

SHAPVAL_API void shapval_game_destroy(shapval_game* game);

SHAPVAL_API shapval_status shapval_game_players(const shapval_game* game, int32_t* out_players);

/* Utility of the coalition given as player indices (count may be 0). */
SHAPVAL_API shapval_status shapval_game_utility(const shapval_game* game,
                                                const int32_t* members, size_t count,
                                                double* out_utility);

/* Exhaustive Shapley values; out_phi must hold one double per player. Games
 * above the cap are refused with SHAPVAL_ERROR_SIZE_CAP. */
SHAPVAL_API shapval_status shapval_exact_shapley(const shapval_game* game, int32_t cap,
                                                 int workers, double* out_phi);

/* Permutation-sampling estimate from `permutations` random orderings. */
SHAPVAL_API shapval_status shapval_permutation_shapley(const shapval_game* game,
                                                       int64_t permutations, uint64_t seed,
                                                       int workers, double* out_phi);

/* Stratified estimate with a per-player budget split across coalition sizes
 * proportionally to f(k); family is "constant", "harmonic" or "power" (the
 * exponent `a` applies to "power" only). */
SHAPVAL_API shapval_status shapval_stratified_shapley(const shapval_game* game,
                                                      const char* family, double a,
                                                      int64_t budget, uint64_t seed,
                                                      int workers, double* out_phi);

/* Permutations sufficient for (epsilon, delta) accuracy when marginal
 * contributions span at most `range`. */
SHAPVAL_API shapval_status shapval_permutation_bound(double epsilon, double delta,
                                                     double range, int64_t* out_m);

/* Per-player stratified budget sufficient for (epsilon, delta) accuracy
 * under an f(k)-proportional allocation. */
SHAPVAL_API shapval_status shapval_stratified_bound(double epsilon, double delta,
                                                    int32_t players, const char* family,
                                                    double a, int64_t* out_m);

/* Closed-form budget for the harmonic family. */
SHAPVAL_API shapval_status shapval_stratified_bound_harmonic(double epsilon, double delta,
                                                             int32_t players, int64_t* out_m);

/* Runs one full command (value, exact, sweep, removal, bound, check) from a
 * config JSON document and yields the report as a JSON string in
 * *out_report_json (release with shapval_free). Also writes any files the
 * config asks for. */
SHAPVAL_API shapval_status shapval_run(const char* config_json, char** out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* SHAPVAL_H */
