#ifndef NEUTRALWALK_H
#define NEUTRALWALK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NwModel {
  NW_MODEL_REDUNDANT = 0,
  NW_MODEL_DEGENERATE = 1,
} NwModel;

typedef enum NwMutation {
  NW_MUTATION_REPLACE = 0,
  NW_MUTATION_DELETE = 1,
} NwMutation;

typedef enum NwStatus {
  NW_STATUS_OK = 0,
  NW_STATUS_NULL_POINTER = 1,
  NW_STATUS_INVALID_ARGUMENT = 2,
  NW_STATUS_CONFIG = 3,
  NW_STATUS_RUN = 4,
  NW_STATUS_IO = 5,
  NW_STATUS_PANIC = 6,
} NwStatus;

/**
 * Aggregated independent runs.
 */
typedef struct NwBatch NwBatch;

/**
 * Experiment settings.
 */
typedef struct NwConfig NwConfig;

/**
 * A finished exploration.
 */
typedef struct NwExploration NwExploration;

/**
 * Per-run numbers; the path length is NaN when no pair was connected.
 */
typedef struct NwRunSummary {
  uint64_t nn_size;
  uint64_t evolvability;
  uint64_t steps_executed;
  uint64_t duplicates;
  double degree_average;
  double path_length_average;
} NwRunSummary;

/**
 * One row of the exploration series.
 */
typedef struct NwStep {
  uint64_t step;
  uint64_t nn_size;
  uint64_t unique_boundary_phenotypes;
  uint64_t duplicates;
} NwStep;

/**
 * Batch means and standard deviations over runs.
 */
typedef struct NwBatchSummary {
  uint64_t runs;
  double nn_size_mean;
  double nn_size_std;
  double evolvability_mean;
  double evolvability_std;
  double steps_executed_mean;
  double degree_average_mean;
  double path_length_average_mean;
} NwBatchSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *nw_last_error_message(void);

/**
 * Default settings (seed 12345, 50 runs, 20000 steps, alpha 5%).
 */
struct NwConfig *nw_config_new(void);

/**
 * Reads a TOML configuration file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum NwStatus nw_config_from_file(const char *path, struct NwConfig **out);

/**
 * # Safety
 * `config` must come from `nw_config_new` or `nw_config_from_file`, or be null.
 */
void nw_config_free(struct NwConfig *config);

/**
 * # Safety
 * `config` must be a live handle.
 */
enum NwStatus nw_config_set_seed(struct NwConfig *config, uint64_t seed);

/**
 * # Safety
 * `config` must be a live handle.
 */
enum NwStatus nw_config_set_steps(struct NwConfig *config, uint64_t steps);

/**
 * # Safety
 * `config` must be a live handle.
 */
enum NwStatus nw_config_set_runs(struct NwConfig *config, uint64_t runs);

/**
 * Neutrality margin in percent, e.g. 5.0.
 *
 * # Safety
 * `config` must be a live handle.
 */
enum NwStatus nw_config_set_alpha(struct NwConfig *config, double percent);

/**
 * # Safety
 * `config` must be a live handle.
 */
enum NwStatus nw_config_set_fleet_size(struct NwConfig *config, uint64_t size);

/**
 * # Safety
 * `config` must be a live handle.
 */
enum NwStatus nw_config_set_mutation(struct NwConfig *config, enum NwMutation mutation);

/**
 * One exploration of `model` seeded with the configured seed.
 *
 * # Safety
 * `config` must be a live handle and `out` a writable pointer.
 */
enum NwStatus nw_explore(const struct NwConfig *config,
                         enum NwModel model,
                         struct NwExploration **out);

/**
 * # Safety
 * `exploration` must come from `nw_explore`, or be null.
 */
void nw_exploration_free(struct NwExploration *exploration);

/**
 * # Safety
 * `exploration` must be a live handle and `out` a writable pointer.
 */
enum NwStatus nw_exploration_summary(const struct NwExploration *exploration,
                                     struct NwRunSummary *out);

/**
 * Number of series rows (steps executed plus the initial row); 0 for null.
 *
 * # Safety
 * `exploration` must be a live handle or null.
 */
uint64_t nw_exploration_series_len(const struct NwExploration *exploration);

/**
 * # Safety
 * `exploration` must be a live handle and `out` a writable pointer.
 */
enum NwStatus nw_exploration_series_at(const struct NwExploration *exploration,
                                       uint64_t index,
                                       struct NwStep *out);

/**
 * Writes series.csv, summary.json and edges.csv into `dir`.
 *
 * # Safety
 * `exploration` must be a live handle and `dir` a NUL-terminated string.
 */
enum NwStatus nw_exploration_write(const struct NwExploration *exploration, const char *dir);

/**
 * Independent runs of `model`; honors NEUTRALWALK_THREADS.
 *
 * # Safety
 * `config` must be a live handle and `out` a writable pointer.
 */
enum NwStatus nw_batch(const struct NwConfig *config, enum NwModel model, struct NwBatch **out);

/**
 * # Safety
 * `batch` must come from `nw_batch`, or be null.
 */
void nw_batch_free(struct NwBatch *batch);

/**
 * # Safety
 * `batch` must be a live handle and `out` a writable pointer.
 */
enum NwStatus nw_batch_summary(const struct NwBatch *batch, struct NwBatchSummary *out);

/**
 * Writes the mean series.csv and summary.json into `dir`.
 *
 * # Safety
 * `batch` must be a live handle and `dir` a NUL-terminated string.
 */
enum NwStatus nw_batch_write(const struct NwBatch *batch, const char *dir);

/**
 * Runs the brute-force oracle checks; `passed` receives 1 or 0.
 *
 * # Safety
 * `passed` must be a writable pointer.
 */
enum NwStatus nw_oracle_check(int32_t *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEUTRALWALK_H */
